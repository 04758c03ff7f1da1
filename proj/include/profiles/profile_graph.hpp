#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "constellation.hpp"
#include "permutation.hpp"

namespace profiles {

/// Vertex (column, line) of a profile; columns are 1..q.
struct Vertex {
  int column = 0;
  Sheet line = 0;

  auto operator<=>(const Vertex&) const = default;
};

inline std::string to_string(const Vertex& v) {
  return "(" + std::to_string(v.column) + "," + std::to_string(v.line) + ")";
}

inline int next_column(int column, int columns) { return column == columns ? 1 : column + 1; }

/// Line edge from (from_column, line) to (next(from_column), line). The edge
/// leaving column q is the edge through infinity.
struct EdgeSeg {
  Sheet line = 0;
  int from_column = 0;

  auto operator<=>(const EdgeSeg&) const = default;
};

/// Vertical arc at `column` from line from_line to line to_line (equal lines: a loop).
struct Arc {
  int column = 0;
  Sheet from_line = 0;
  Sheet to_line = 0;

  auto operator<=>(const Arc&) const = default;
};

/// Raw incidence item of an explicit graph. Edges are stored in column order,
/// arcs from tail to head.
struct Link {
  Vertex from;
  Vertex to;

  auto operator<=>(const Link&) const = default;
};

/**
 * A partially oriented graph drawn on parallel lines: vertices (i, j), line
 * edges and vertical arcs.
 *
 * Finite sheet sets carry explicit vertex/edge/arc sets, which need not satisfy
 * the profile axioms (see validation.hpp). Periodic sheet sets are infinite, so
 * the graph is implicit and carries its Constellation instead.
 */
class ProfileGraph {
 public:
  ProfileGraph(int columns, SheetSet sheets) : columns_(columns), sheets_(sheets) {
    if (columns < 1) throw std::invalid_argument("profile needs at least one column");
    if (!sheets.is_finite()) throw std::invalid_argument("explicit profiles need a finite sheet set");
  }

  static ProfileGraph implicit(Constellation c) { return ProfileGraph(std::move(c)); }

  int columns() const { return columns_; }
  const SheetSet& sheet_set() const { return sheets_; }
  bool is_implicit() const { return implicit_.has_value(); }
  const std::optional<Constellation>& implicit_constellation() const { return implicit_; }

  const std::set<Vertex>& vertices() const { return vertices_; }

  const std::vector<Link>& edges() const { return edges_; }
  const std::vector<Link>& arcs() const { return arcs_; }

  /// Dense index of a vertex of an explicit graph: (column - 1) * n + (line - 1).
  std::size_t slot(Vertex v) const {
    return static_cast<std::size_t>(v.column - 1) * static_cast<std::size_t>(sheets_.size()) +
           static_cast<std::size_t>(v.line - 1);
  }
  std::size_t slot_count() const {
    return static_cast<std::size_t>(columns_) * static_cast<std::size_t>(sheets_.size());
  }

  void add_vertex(Vertex v) {
    check(v);
    vertices_.insert(v);
  }

  // Edges are undirected; a line segment given backwards is stored in column order.
  void add_edge(Vertex from, Vertex to) {
    add_vertex(from);
    add_vertex(to);
    if (from.line == to.line && from.column == next_column(to.column, columns_) &&
        to.column != next_column(from.column, columns_))
      std::swap(from, to);
    edges_.push_back({from, to});
  }

  void add_edge(EdgeSeg e) {
    add_edge({e.from_column, e.line}, {next_column(e.from_column, columns_), e.line});
  }

  void add_arc(Vertex tail, Vertex head) {
    add_vertex(tail);
    add_vertex(head);
    arcs_.push_back({tail, head});
  }

  void add_arc(Arc a) { add_arc({a.column, a.from_line}, {a.column, a.to_line}); }

  /// Removes a vertex together with every incident edge and arc.
  void remove_vertex(Vertex v) {
    auto touches = [&](const Link& l) { return l.from == v || l.to == v; };
    std::erase_if(edges_, touches);
    std::erase_if(arcs_, touches);
    vertices_.erase(v);
  }

  void remove_arc(std::size_t index) { arcs_.erase(arcs_.begin() + static_cast<std::ptrdiff_t>(index)); }
  void remove_edge(std::size_t index) { edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(index)); }

  /// Same vertices and the same multisets of edges and arcs.
  friend bool operator==(const ProfileGraph& a, const ProfileGraph& b) {
    auto sorted = [](std::vector<Link> v) {
      std::sort(v.begin(), v.end());
      return v;
    };
    return a.columns_ == b.columns_ && a.sheets_ == b.sheets_ && a.implicit_ == b.implicit_ &&
           a.vertices_ == b.vertices_ && sorted(a.edges_) == sorted(b.edges_) &&
           sorted(a.arcs_) == sorted(b.arcs_);
  }

 private:
  explicit ProfileGraph(Constellation c)
      : columns_(c.columns()), sheets_(c.sheet_set()), implicit_(std::move(c)) {}

  void check(Vertex v) const {
    if (implicit_) throw std::logic_error("cannot add items to an implicit profile");
    if (v.column < 1 || v.column > columns_ || !sheets_.contains(v.line))
      throw std::out_of_range("vertex " + to_string(v) + " outside " + std::to_string(columns_) +
                              " columns x " + to_string(sheets_));
  }

  int columns_;
  SheetSet sheets_;
  std::optional<Constellation> implicit_;
  std::set<Vertex> vertices_;
  std::vector<Link> edges_;
  std::vector<Link> arcs_;
};

}  // namespace profiles
