#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "constellation.hpp"
#include "conversion.hpp"
#include "covering.hpp"
#include "profile_graph.hpp"

namespace profiles {

/// Inner half-sheet `inner` (a line) glued to outer half-sheet `outer` (a
/// covering path, named by its start line) along boundary piece L_segment.
struct Gluing {
  Sheet inner = 0;
  Sheet outer = 0;
  int segment = 0;

  auto operator<=>(const Gluing&) const = default;
};

struct BranchPoint {
  int column = 0;
  Sheet label = 0;              // smallest participating line (or residue stretch start)
  std::optional<Sheet> order;   // empty: logarithmic
  bool periodic_family = false;
  std::vector<Sheet> inner;     // participating inner half-sheets, sorted
  std::vector<Sheet> outer;     // participating outer half-sheets, sorted

  bool logarithmic() const { return !order.has_value(); }
};

/**
 * The surface assembled from half-sheets. For periodic profiles the record
 * covers one period: lines and path representatives 0..p-1, every other
 * half-sheet being a translate.
 */
struct GluingRecord {
  SheetSet sheets;
  int columns;
  std::vector<Sheet> inner_sheets;
  std::vector<Sheet> outer_sheets;
  std::vector<Gluing> gluings;
  std::vector<BranchPoint> branch_points;
  std::vector<std::vector<Sheet>> contour_lengths;  // per column, every mu-contour incl. loops (finite only)
};

/**
 * Glues inner half-sheet j to the covering path through edge (j, i) along L_i,
 * then reads branch points off the vertex cycles of each column: a contour of
 * length lambda + 1 joins lambda + 1 inner and lambda + 1 outer half-sheets,
 * a loop joins one of each and yields no branch point.
 *
 * Throws std::invalid_argument if the covering does not belong to the profile.
 */
inline GluingRecord glue(const ProfileGraph& g, const ExactCovering& covering) {
  auto c = to_constellation(g);
  const auto& sheets = c.sheet_set();
  int q = c.columns();
  if (covering.sheets != sheets || covering.columns != q)
    throw std::invalid_argument("covering mismatch: different sheet set or column count");
  if (sheets.is_finite()) {
    if (auto diag = verify_exact_covering(g, covering.paths); !diag)
      throw std::invalid_argument("covering mismatch: not an exact covering of this profile");
  } else {
    auto expected = find_exact_covering(g);
    if (!expected.covering || expected.covering->paths != covering.paths)
      throw std::invalid_argument("covering mismatch: path families differ from the forced walks");
  }

  Sheet p = sheets.extent();
  auto key_line = [&](Sheet line) { return sheets.is_finite() ? line : floor_mod(line, p); };
  // (line key, column) -> (path start, line the path uses there)
  std::map<std::pair<Sheet, int>, std::pair<Sheet, Sheet>> owner;
  for (const auto& path : covering.paths)
    for (const auto& s : path.steps)
      if (s.kind == StepKind::edge) owner[{key_line(s.from.line), s.from.column}] = {path.start_line(), s.from.line};
  auto outer_of = [&](Sheet line, int column) {
    auto [start, used] = owner.at({key_line(line), column});
    return start + (line - used);
  };

  GluingRecord record{sheets, q, {}, {}, {}, {}, {}};
  record.inner_sheets = sheets.representatives();
  for (const auto& path : covering.paths) record.outer_sheets.push_back(path.start_line());
  for (Sheet line : record.inner_sheets)
    for (int i = 1; i <= q; ++i) record.gluings.push_back({line, outer_of(line, i), i});

  for (int i = 1; i <= q; ++i) {
    std::vector<Sheet> lengths;
    for (const auto& mu : mu_objects(c, i)) {
      if (mu.kind == MuObject::Kind::infinite_path) {
        record.branch_points.push_back({i, mu.lines.front(), std::nullopt, false, {}, {}});
        continue;
      }
      lengths.push_back(mu.length());
      if (mu.is_loop()) continue;
      BranchPoint bp{i, *std::min_element(mu.lines.begin(), mu.lines.end()), mu.branch_order(),
                     mu.periodic_family, mu.lines, {}};
      for (Sheet line : mu.lines) bp.outer.push_back(outer_of(line, i));
      std::sort(bp.inner.begin(), bp.inner.end());
      std::sort(bp.outer.begin(), bp.outer.end());
      record.branch_points.push_back(std::move(bp));
    }
    if (sheets.is_finite()) record.contour_lengths.push_back(std::move(lengths));
  }
  return record;
}

/**
 * V - E + F of the cell decomposition the gluing induces: vertices and arcs of
 * the surface graph (one per contour member), line edges (one per gluing),
 * and faces = inner + outer half-sheets + one disk around each contour.
 */
inline Sheet euler_from_cells(const GluingRecord& record) {
  if (!record.sheets.is_finite()) throw std::domain_error("euler_from_cells needs a finite closed surface");
  Sheet vertices = 0;
  Sheet disks = 0;
  for (const auto& column : record.contour_lengths) {
    for (Sheet len : column) vertices += len;
    disks += static_cast<Sheet>(column.size());
  }
  Sheet arcs = vertices;
  auto edges = static_cast<Sheet>(record.gluings.size());
  auto faces = static_cast<Sheet>(record.inner_sheets.size() + record.outer_sheets.size()) + disks;
  return vertices - (edges + arcs) + faces;
}

struct BranchSummary {
  int column = 0;
  std::map<Sheet, Sheet> orders;  // lambda >= 1 -> multiplicity (per period when periodic)
  Sheet logarithmic = 0;
  bool periodic_families = false;
};

struct SurfaceReport {
  SheetSet sheets;
  int columns = 0;
  bool connected = false;
  bool realizable = false;
  bool closed = false;
  std::vector<BranchSummary> branching;
  std::optional<Sheet> total_branching;
  std::optional<Sheet> euler_characteristic;
  std::optional<Sheet> genus;
};

/**
 * Branch data per base point, plus Euler characteristic 2n - B and genus for
 * finite connected realizable profiles. Periodic profiles are open surfaces and
 * get no genus. Throws InvalidProfile if the local profile axioms fail.
 */
inline SurfaceReport surface_report(const ProfileGraph& g) {
  auto c = to_constellation(g);
  SurfaceReport report{c.sheet_set(), c.columns()};
  report.connected = is_transitive(c);
  bool finite = c.sheet_set().is_finite();

  Sheet total = 0;
  for (int i = 1; i <= c.columns(); ++i) {
    BranchSummary summary{i, {}, 0, !finite};
    for (const auto& mu : mu_objects(c, i)) {
      if (mu.kind == MuObject::Kind::infinite_path) {
        ++summary.logarithmic;
      } else if (!mu.is_loop()) {
        ++summary.orders[*mu.branch_order()];
        total += *mu.branch_order();
      }
    }
    report.branching.push_back(std::move(summary));
  }

  report.realizable = report.connected && find_exact_covering(from_constellation(c)).covering.has_value();
  if (!finite) return report;

  report.total_branching = total;
  if (report.realizable) {
    report.closed = true;
    Sheet chi = 2 * c.sheet_set().size() - total;
    report.euler_characteristic = chi;
    report.genus = (2 - chi) / 2;
  }
  return report;
}

}  // namespace profiles
