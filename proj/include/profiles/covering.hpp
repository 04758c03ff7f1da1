#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "constellation.hpp"
#include "conversion.hpp"
#include "permutation.hpp"
#include "profile_graph.hpp"
#include "validation.hpp"

namespace profiles {

enum class StepKind { arc, edge };

/// One traversed item of a walk: an arc (tail to head) or an edge (in column order).
struct Step {
  StepKind kind;
  Vertex from;
  Vertex to;

  auto operator<=>(const Step&) const = default;
};

inline std::string to_string(const Step& s) {
  return to_string(s.from) + (s.kind == StepKind::arc ? " => " : " -- ") + to_string(s.to);
}

/**
 * Closed walk alternating arcs and edges, starting with the arc at column 1.
 * Line sequence i_0, ..., i_q with i_k = sigma_k(i_{k-1}).
 */
struct CoveringPath {
  std::vector<Step> steps;

  Sheet start_line() const { return steps.front().from.line; }

  std::vector<Sheet> line_sequence() const {
    std::vector<Sheet> out{start_line()};
    for (const auto& s : steps)
      if (s.kind == StepKind::arc) out.push_back(s.to.line);
    return out;
  }

  std::size_t arc_count() const {
    return static_cast<std::size_t>(
        std::count_if(steps.begin(), steps.end(), [](const Step& s) { return s.kind == StepKind::arc; }));
  }

  std::size_t edge_count() const { return steps.size() - arc_count(); }

  auto operator<=>(const CoveringPath&) const = default;
};

/**
 * A set of paths containing every arc and edge exactly once, sorted by start
 * line. For a periodic profile `paths` holds one representative per residue
 * 0..p-1; its translates by multiples of p make up the rest of the family.
 */
struct ExactCovering {
  SheetSet sheets;
  int columns;
  std::vector<CoveringPath> paths;

  bool periodic() const { return sheets.is_periodic(); }

  friend bool operator==(const ExactCovering&, const ExactCovering&) = default;
};

/// Result of a forced walk: a closed path, or the open trace of one sweep.
struct Walk {
  bool closed = false;
  Sheet start_line = 0;
  Sheet end_line = 0;  // line reached at column 1 after one sweep
  CoveringPath path;
};

// Sweeps columns 1..q: arc sigma_i, then the edge to the next column.
inline Walk forced_walk(const Constellation& c, Sheet start_line) {
  if (!c.sheet_set().contains(start_line))
    throw std::out_of_range("start line " + std::to_string(start_line) + " outside sheet set");
  Walk walk;
  walk.start_line = start_line;
  Sheet line = start_line;
  int q = c.columns();
  for (int i = 1; i <= q; ++i) {
    Sheet next = c.sigma(i)(line);
    walk.path.steps.push_back({StepKind::arc, {i, line}, {i, next}});
    walk.path.steps.push_back({StepKind::edge, {i, next}, {next_column(i, q), next}});
    line = next;
  }
  walk.end_line = line;
  walk.closed = line == start_line;
  return walk;
}

inline Walk forced_walk(const ProfileGraph& g, Sheet start_line) {
  return forced_walk(to_constellation(g), start_line);
}

struct CoverResult {
  std::optional<ExactCovering> covering;
  std::optional<Walk> failure;  // first walk that did not close

  explicit operator bool() const { return covering.has_value(); }
};

/**
 * Decides realizability. With every arc traversed forward each walk is forced,
 * so the covering is unique up to path order: it exists iff the walk from every
 * line of column 1 closes, i.e. iff the monodromy product is the identity.
 */
inline CoverResult find_exact_covering(const ProfileGraph& g) {
  if (auto report = validate_profile_type(g); !report.ok()) throw InvalidProfile(std::move(report));
  auto c = g.is_implicit() ? *g.implicit_constellation() : detail::read_constellation(g);
  CoverResult result;
  ExactCovering covering{c.sheet_set(), c.columns(), {}};
  for (Sheet start : c.sheet_set().representatives()) {
    auto walk = forced_walk(c, start);
    if (!walk.closed) {
      result.failure = std::move(walk);
      return result;
    }
    covering.paths.push_back(std::move(walk.path));
  }
  result.covering = std::move(covering);
  return result;
}

struct PathCheck {
  bool ok = false;
  std::string reason;

  explicit operator bool() const { return ok; }
};

/**
 * Checks one candidate path: arcs and edges alternate starting with an arc at
 * column 1, arcs run tail to head, edges run in column order, consecutive
 * items share a vertex and the walk closes, no vertex repeats once loops are
 * dropped, and column indices never decrease before the closing edge.
 *
 * Throws std::invalid_argument on an empty or odd-length sequence.
 */
inline PathCheck is_definition1_path(const ProfileGraph& g, const CoveringPath& path) {
  const auto& steps = path.steps;
  if (steps.empty() || steps.size() % 2 != 0)
    throw std::invalid_argument("malformed path: needs a nonempty even number of items");
  auto fail = [](std::string why) { return PathCheck{false, std::move(why)}; };

  for (std::size_t k = 0; k < steps.size(); ++k)
    if (steps[k].kind != (k % 2 == 0 ? StepKind::arc : StepKind::edge))
      return fail("arcs and edges do not alternate at item " + std::to_string(k + 1));
  if (steps.front().from.column != 1) return fail("path does not start at column 1");

  std::set<Link> arcs;
  std::set<Link> edges;
  if (g.is_implicit()) {
    const auto& c = *g.implicit_constellation();
    for (const auto& s : steps) {
      int i = s.from.column;
      if (i < 1 || i > c.columns()) return fail("item " + to_string(s) + " outside the profile");
      if (s.kind == StepKind::arc) {
        Sheet head = c.sigma(i)(s.from.line);
        arcs.insert(Link{{i, s.from.line}, {i, head}});
        Sheet tail = inverse(c.sigma(i))(s.from.line);
        if (tail != s.from.line) arcs.insert(Link{{i, tail}, {i, s.from.line}});
      } else {
        edges.insert(Link{s.from, {next_column(i, c.columns()), s.from.line}});
        edges.insert(Link{s.to, {next_column(s.to.column, c.columns()), s.to.line}});
      }
    }
  } else {
    arcs.insert(g.arcs().begin(), g.arcs().end());
    edges.insert(g.edges().begin(), g.edges().end());
  }

  for (const auto& s : steps) {
    const auto& items = s.kind == StepKind::arc ? arcs : edges;
    if (items.contains({s.from, s.to})) continue;
    if (items.contains({s.to, s.from}))
      return fail((s.kind == StepKind::arc ? "arc " : "edge ") + to_string(s.from) + " - " + to_string(s.to) +
                  " traversed against its orientation");
    return fail("item " + to_string(s) + " is not in the profile");
  }

  for (std::size_t k = 0; k + 1 < steps.size(); ++k)
    if (steps[k].to != steps[k + 1].from)
      return fail("walk breaks between items " + std::to_string(k + 1) + " and " + std::to_string(k + 2));
  if (steps.back().to != steps.front().from) return fail("walk does not close");

  std::set<Vertex> visited;
  for (const auto& s : steps) {
    if (s.kind == StepKind::arc && s.from == s.to) continue;  // a loop counts as one arc
    if (!visited.insert(s.from).second) return fail("vertex " + to_string(s.from) + " repeats");
  }

  for (std::size_t k = 0; k + 1 < steps.size(); ++k)
    if (steps[k].to.column < steps[k].from.column)
      return fail("column index decreases at item " + std::to_string(k + 1));
  return {true, {}};
}

/// Outcome of checking a candidate covering against a finite profile.
struct CoveringDiagnostics {
  std::vector<std::string> invalid_paths;
  std::vector<std::string> missing;
  std::vector<std::string> duplicated;

  bool ok() const { return invalid_paths.empty() && missing.empty() && duplicated.empty(); }
  explicit operator bool() const { return ok(); }
};

inline CoveringDiagnostics verify_exact_covering(const ProfileGraph& g, const std::vector<CoveringPath>& candidate) {
  if (g.is_implicit()) throw std::invalid_argument("verify_exact_covering needs a finite profile");
  CoveringDiagnostics out;
  std::map<std::pair<StepKind, Link>, int> expected;
  std::map<std::pair<StepKind, Link>, int> used;
  for (const auto& a : g.arcs()) ++expected[{StepKind::arc, a}];
  for (const auto& e : g.edges()) ++expected[{StepKind::edge, e}];

  for (std::size_t k = 0; k < candidate.size(); ++k) {
    const auto& path = candidate[k];
    std::string name = "path " + std::to_string(k + 1);
    try {
      if (auto check = is_definition1_path(g, path); !check)
        out.invalid_paths.push_back(name + ": " + check.reason);
    } catch (const std::invalid_argument& e) {
      out.invalid_paths.push_back(name + ": " + e.what());
    }
    for (const auto& s : path.steps) ++used[{s.kind, Link{s.from, s.to}}];
  }

  auto label = [](StepKind kind, const Link& l) {
    return std::string(kind == StepKind::arc ? "arc " : "edge ") + to_string(l.from) + " - " + to_string(l.to);
  };
  for (const auto& [key, count] : expected) {
    int n = used.contains(key) ? used.at(key) : 0;
    if (n < count) out.missing.push_back(label(key.first, key.second));
    if (n > count) out.duplicated.push_back(label(key.first, key.second) + " used " + std::to_string(n) + " times");
  }
  return out;
}

namespace detail {

// Exhaustive search over path systems built directly from the raw items.
class CoverSearch {
 public:
  explicit CoverSearch(const ProfileGraph& g)
      : arcs_(g.arcs()), edges_(g.edges()), arc_used_(arcs_.size(), false), edge_used_(edges_.size(), false) {}

  std::optional<std::vector<CoveringPath>> run() {
    if (next_path()) return found_;
    return std::nullopt;
  }

 private:
  bool next_path() {
    std::size_t start = arcs_.size();
    for (std::size_t k = 0; k < arcs_.size(); ++k)
      if (!arc_used_[k] && arcs_[k].from.column == 1 && (start == arcs_.size() || arcs_[k] < arcs_[start]))
        start = k;
    if (start == arcs_.size()) return all_used();
    // Every path passes column 1 exactly once, so the smallest free column-1
    // arc must open some path; trying only it loses no solutions.
    CoveringPath path;
    std::set<Vertex> visited{arcs_[start].from};
    return take_arc(start, arcs_[start].from, path, visited);
  }

  bool all_used() const {
    return std::all_of(arc_used_.begin(), arc_used_.end(), [](bool b) { return b; }) &&
           std::all_of(edge_used_.begin(), edge_used_.end(), [](bool b) { return b; });
  }

  bool take_arc(std::size_t k, Vertex origin, CoveringPath& path, std::set<Vertex>& visited) {
    const auto& a = arcs_[k];
    bool loop = a.from == a.to;
    if (!loop && (visited.contains(a.to) || a.to.column < a.from.column)) return false;
    arc_used_[k] = true;
    path.steps.push_back({StepKind::arc, a.from, a.to});
    if (!loop) visited.insert(a.to);
    if (extend_edge(a.to, origin, path, visited)) return true;
    if (!loop) visited.erase(a.to);
    path.steps.pop_back();
    arc_used_[k] = false;
    return false;
  }

  bool extend_edge(Vertex at, Vertex origin, CoveringPath& path, std::set<Vertex>& visited) {
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      const auto& e = edges_[k];
      if (edge_used_[k] || e.from != at) continue;
      edge_used_[k] = true;
      path.steps.push_back({StepKind::edge, e.from, e.to});
      if (e.to == origin) {
        found_.push_back(path);
        if (next_path()) return true;
        found_.pop_back();
      } else if (e.to.column > at.column && !visited.contains(e.to)) {
        visited.insert(e.to);
        if (extend_arc(e.to, origin, path, visited)) return true;
        visited.erase(e.to);
      }
      path.steps.pop_back();
      edge_used_[k] = false;
    }
    return false;
  }

  bool extend_arc(Vertex at, Vertex origin, CoveringPath& path, std::set<Vertex>& visited) {
    for (std::size_t k = 0; k < arcs_.size(); ++k)
      if (!arc_used_[k] && arcs_[k].from == at && take_arc(k, origin, path, visited)) return true;
    return false;
  }

  const std::vector<Link>& arcs_;
  const std::vector<Link>& edges_;
  std::vector<bool> arc_used_;
  std::vector<bool> edge_used_;
  std::vector<CoveringPath> found_;
};

}  // namespace detail

inline constexpr Sheet kOracleCellLimit = 24;

/**
 * Independent certificate for find_exact_covering: backtracks over every
 * system of forward-oriented alternating closed walks on the raw edge and arc
 * lists, with no use of sheet permutations. Finite profiles with n * q <= 24.
 */
inline std::optional<ExactCovering> backtracking_cover_oracle(const ProfileGraph& g) {
  if (g.is_implicit() || !g.sheet_set().is_finite())
    throw std::invalid_argument("backtracking oracle needs a finite explicit profile");
  if (g.sheet_set().size() * g.columns() > kOracleCellLimit)
    throw std::length_error("backtracking oracle limited to n * q <= " + std::to_string(kOracleCellLimit));
  auto paths = detail::CoverSearch(g).run();
  if (!paths) return std::nullopt;
  std::sort(paths->begin(), paths->end(),
            [](const CoveringPath& a, const CoveringPath& b) { return a.start_line() < b.start_line(); });
  return ExactCovering{g.sheet_set(), g.columns(), std::move(*paths)};
}

/// Cycle of line edges on one line (one per sheet).
struct BetaCycle {
  Sheet line = 0;
  std::vector<EdgeSeg> edges;  // column order

  friend bool operator==(const BetaCycle&, const BetaCycle&) = default;
};

inline std::vector<BetaCycle> beta_cycles(const ProfileGraph& g) {
  if (g.is_implicit()) throw std::invalid_argument("beta_cycles needs a finite profile");
  std::map<Sheet, BetaCycle> by_line;
  for (Sheet line : g.sheet_set().representatives()) by_line[line].line = line;
  for (const auto& e : g.edges()) {
    if (e.from.line != e.to.line) continue;
    by_line[e.from.line].edges.push_back({e.from.line, e.from.column});
  }
  std::vector<BetaCycle> out;
  for (auto& [line, cycle] : by_line) {
    std::sort(cycle.edges.begin(), cycle.edges.end());
    out.push_back(std::move(cycle));
  }
  return out;
}

/**
 * Vertex cycle of sigma_i over base point i. A contour of length lambda + 1
 * marks a branch point of order lambda (a loop, lambda = 0, marks none); an
 * infinite path marks a logarithmic branch point.
 */
struct MuObject {
  enum class Kind { contour, infinite_path };

  int column = 0;
  Kind kind = Kind::contour;
  std::vector<Sheet> lines;      // contour cycle, or one period's stretch of an infinite path
  bool periodic_family = false;  // contour repeated under translation by the period
  Sheet net_shift = 0;           // infinite paths: periods advanced per stretch

  Sheet length() const { return static_cast<Sheet>(lines.size()); }
  bool is_loop() const { return kind == Kind::contour && lines.size() == 1; }

  /// lambda for a contour; empty for a logarithmic branch point.
  std::optional<Sheet> branch_order() const {
    if (kind == Kind::infinite_path) return std::nullopt;
    return length() - 1;
  }

  friend bool operator==(const MuObject&, const MuObject&) = default;
};

inline std::vector<MuObject> mu_objects(const Constellation& c, int column) {
  const auto& sigma = c.sigma(column);
  bool periodic = c.sheet_set().is_periodic();
  std::vector<MuObject> out;
  for (const auto& orbit : cycle_structure(sigma)) {
    if (!orbit.infinite()) {
      out.push_back({column, MuObject::Kind::contour, orbit.elements, periodic, 0});
      continue;
    }
    // A class with net shift d holds |d| orbits, through r0, r0 + p, ..., r0 + (|d|-1)p.
    Sheet p = c.sheet_set().extent();
    for (Sheet t = 0; t < orbit.infinite_orbit_count(); ++t) {
      MuObject mu{column, MuObject::Kind::infinite_path, {}, false, orbit.net_shift};
      for (Sheet j : orbit.elements) mu.lines.push_back(j + t * p);
      out.push_back(std::move(mu));
    }
  }
  return out;
}

inline std::vector<MuObject> mu_objects(const ProfileGraph& g, int column) {
  return mu_objects(to_constellation(g), column);
}

}  // namespace profiles
