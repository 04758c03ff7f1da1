#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "constellation.hpp"
#include "profile_graph.hpp"

namespace profiles {

// Declared in alphabetical order; reports sort by this order.
enum class ViolationCode {
  arc_not_bijective,
  arc_not_vertical,
  column_incomplete,
  degree,
  disconnected,
  edge_shape,
};

inline std::string_view code_name(ViolationCode code) {
  switch (code) {
    case ViolationCode::arc_not_bijective: return "ARC_NOT_BIJECTIVE";
    case ViolationCode::arc_not_vertical: return "ARC_NOT_VERTICAL";
    case ViolationCode::column_incomplete: return "COLUMN_INCOMPLETE";
    case ViolationCode::degree: return "DEGREE";
    case ViolationCode::disconnected: return "DISCONNECTED";
    case ViolationCode::edge_shape: return "EDGE_SHAPE";
  }
  return "UNKNOWN";
}

/// Where a violation sits: a vertex (column, line), or an arc (column, line, other line).
struct Location {
  int column = 0;
  Sheet line = 0;
  Sheet other = 0;

  auto operator<=>(const Location&) const = default;
};

struct Violation {
  ViolationCode code;
  Location location;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  bool has(ViolationCode code) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.code == code; });
  }
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

inline std::size_t component_count(const ProfileGraph& g) {
  UnionFind uf(g.slot_count());
  for (const auto* items : {&g.edges(), &g.arcs()})
    for (const auto& l : *items) uf.unite(g.slot(l.from), g.slot(l.to));
  std::size_t roots = 0;
  for (const auto& v : g.vertices()) roots += uf.find(g.slot(v)) == g.slot(v);
  return roots;
}

}  // namespace detail

/// Connectivity of the underlying undirected graph (edges and arcs, orientation ignored).
inline bool is_connected(const ProfileGraph& g) {
  if (g.is_implicit()) return is_transitive(*g.implicit_constellation());
  return detail::component_count(g) == 1;
}

/// Group-side connectivity: transitivity of <sigma_1, ..., sigma_q>.
inline bool is_connected(const Constellation& c) { return is_transitive(c); }

/**
 * Checks the axioms of a graph of profile type.
 *
 * Every vertex has two edge slots and two arc slots (a loop fills both arc
 * slots, a q = 1 infinity edge both edge slots); arcs are vertical and form a
 * bijection of lines in each column; every column holds every line;
 * each line has one edge per pair of consecutive columns plus exactly one edge
 * through infinity; the graph is connected.
 *
 * Implicit (periodic) profiles are bijective by construction, so only
 * connectivity is checked for them.
 */
inline ValidationReport validate_profile_type(const ProfileGraph& g) {
  ValidationReport report;
  auto add = [&](ViolationCode code, Location at, std::string message) {
    report.violations.push_back({code, at, std::move(message)});
  };

  if (g.is_implicit()) {
    if (!is_transitive(*g.implicit_constellation()))
      add(ViolationCode::disconnected, {}, "sheet permutations do not act transitively on the integers");
    return report;
  }

  std::vector<int> columns(static_cast<std::size_t>(g.columns()));
  std::iota(columns.begin(), columns.end(), 1);
  auto successor = [&](int c) { return next_column(c, g.columns()); };

  struct Slots {
    int edges = 0;
    int in = 0;
    int out = 0;
  };
  std::vector<Slots> slots(g.slot_count());
  for (const auto& a : g.arcs()) {
    ++slots[g.slot(a.from)].out;
    ++slots[g.slot(a.to)].in;
    if (a.from.column != a.to.column)
      add(ViolationCode::arc_not_vertical, {a.from.column, a.from.line, a.to.line},
          "arc " + to_string(a.from) + " -> " + to_string(a.to) + " changes column");
  }

  std::map<std::pair<Sheet, int>, int> segments;  // (line, start column) -> count
  for (const auto& e : g.edges()) {
    ++slots[g.slot(e.from)].edges;
    ++slots[g.slot(e.to)].edges;
    auto what = [&] { return "edge " + to_string(e.from) + " - " + to_string(e.to); };
    if (e.from.line != e.to.line) {
      add(ViolationCode::edge_shape, {e.from.column, e.from.line, e.to.line}, what() + " joins two lines");
    } else if (e.to.column == successor(e.from.column)) {
      ++segments[{e.from.line, e.from.column}];
    } else if (e.from.column == successor(e.to.column)) {
      ++segments[{e.to.line, e.to.column}];
    } else {
      add(ViolationCode::edge_shape, {e.from.column, e.from.line, e.to.line},
          what() + " does not join consecutive columns");
    }
  }
  for (const auto& [key, count] : segments)
    if (count > 1)
      add(ViolationCode::edge_shape, {key.second, key.first, 0},
          "line " + std::to_string(key.first) + " has " + std::to_string(count) + " edges leaving column " +
              std::to_string(key.second));

  std::set<Sheet> lines_present;
  for (const auto& v : g.vertices()) lines_present.insert(v.line);
  for (Sheet line : lines_present)
    if (!segments.contains({line, columns.back()}))
      add(ViolationCode::edge_shape, {columns.back(), line, 0},
          "line " + std::to_string(line) + " has no edge through infinity");

  for (int c : columns)
    for (Sheet line : g.sheet_set().representatives())
      if (!g.vertices().contains({c, line}))
        add(ViolationCode::column_incomplete, {c, line, 0},
            "column " + std::to_string(c) + " has no vertex on line " + std::to_string(line));

  for (const auto& v : g.vertices()) {
    const auto& s = slots[g.slot(v)];
    if (s.edges != 2 || s.in + s.out != 2) {
      add(ViolationCode::degree, {v.column, v.line, 0},
          "vertex " + to_string(v) + " has " + std::to_string(s.edges) + " edge slots and " +
              std::to_string(s.in + s.out) + " arc slots");
    } else if (s.in != 1 || s.out != 1) {
      add(ViolationCode::arc_not_bijective, {v.column, v.line, 0},
          "vertex " + to_string(v) + " has " + std::to_string(s.out) + " outgoing and " +
              std::to_string(s.in) + " incoming arcs");
    }
  }

  auto components = detail::component_count(g);
  if (components != 1)
    add(ViolationCode::disconnected, {},
        components == 0 ? "graph has no vertices" : "graph has " + std::to_string(components) + " components");

  std::stable_sort(report.violations.begin(), report.violations.end(), [](const auto& a, const auto& b) {
    return std::tie(a.code, a.location) < std::tie(b.code, b.location);
  });
  return report;
}

}  // namespace profiles
