#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "constellation.hpp"
#include "profile_graph.hpp"
#include "validation.hpp"

namespace profiles {

/// Thrown when an operation needs a graph of profile type and gets something else.
class InvalidProfile : public std::invalid_argument {
 public:
  explicit InvalidProfile(ValidationReport report)
      : std::invalid_argument(describe(report)), report_(std::move(report)) {}

  const ValidationReport& report() const { return report_; }

 private:
  static std::string describe(const ValidationReport& r) {
    std::string out = "not a graph of profile type";
    if (!r.violations.empty())
      out += ": " + std::string(code_name(r.violations.front().code)) + " " + r.violations.front().message;
    return out;
  }

  ValidationReport report_;
};

namespace detail {

// Throws unless every local axiom holds; connectivity is only demanded on request.
inline void require_profile(const ProfileGraph& g, bool need_connected) {
  auto report = validate_profile_type(g);
  std::erase_if(report.violations, [&](const Violation& v) {
    return !need_connected && v.code == ViolationCode::disconnected;
  });
  if (!report.ok()) throw InvalidProfile(std::move(report));
}

// Reads the arcs of an explicit graph already known to satisfy the local axioms.
inline Constellation read_constellation(const ProfileGraph& g) {
  const auto& sheets = g.sheet_set();
  std::vector<std::vector<Sheet>> images(static_cast<std::size_t>(g.columns()),
                                         std::vector<Sheet>(static_cast<std::size_t>(sheets.extent())));
  for (const auto& a : g.arcs())
    images[static_cast<std::size_t>(a.from.column - 1)][static_cast<std::size_t>(a.from.line - 1)] = a.to.line;
  std::vector<Permutation> sigmas;
  for (auto& column : images) sigmas.emplace_back(sheets, std::move(column));
  return Constellation(std::move(sigmas));
}

}  // namespace detail

/// sigma_i(j) = head line of the arc leaving (i, j). Disconnected profiles are accepted.
inline Constellation to_constellation(const ProfileGraph& g) {
  if (g.is_implicit()) return *g.implicit_constellation();
  detail::require_profile(g, false);
  return detail::read_constellation(g);
}

/// Finite constellations become explicit profiles; periodic ones stay implicit.
inline ProfileGraph from_constellation(const Constellation& c) {
  if (c.sheet_set().is_periodic()) return ProfileGraph::implicit(c);
  ProfileGraph g(c.columns(), c.sheet_set());
  for (Sheet line : c.sheet_set().representatives())
    for (int i = 1; i <= c.columns(); ++i) g.add_vertex({i, line});
  for (Sheet line : c.sheet_set().representatives())
    for (int i = 1; i <= c.columns(); ++i) g.add_edge(EdgeSeg{line, i});
  for (int i = 1; i <= c.columns(); ++i)
    for (Sheet line : c.sheet_set().representatives()) g.add_arc(Arc{i, line, c.sigma(i)(line)});
  return g;
}

}  // namespace profiles
