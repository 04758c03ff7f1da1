#pragma once

#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "profiles.hpp"

// Command-line front end. Exit codes: 0 success, 1 a negative answer
// (violations, not coverable, not a profile), 2 usage, I/O or parse errors.
namespace profiles::cli {

namespace detail {

struct Failure {
  int code;
};

inline ProfileDocument load(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot read " << path << "\n";
    throw Failure{2};
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return parse_profile(text);
  } catch (const ParseError& e) {
    err << path << ":" << e.line() << ":" << e.column() << ": " << e.message() << "\n";
    throw Failure{2};
  }
}

inline void print_violations(const ValidationReport& report, std::ostream& os) {
  for (const auto& v : report.violations) os << code_name(v.code) << ": " << v.message << "\n";
}

inline std::string vertex_trail(const CoveringPath& path) {
  std::string out = to_string(path.steps.front().from);
  Vertex last = path.steps.front().from;
  for (const auto& s : path.steps) {
    if (s.to == last) continue;
    out += " -> " + to_string(s.to);
    last = s.to;
  }
  return out;
}

inline std::string optional_text(const std::optional<Sheet>& v) { return v ? std::to_string(*v) : "none"; }

inline std::string branch_text(const BranchSummary& b) {
  std::vector<std::string> parts;
  if (b.logarithmic) parts.push_back("logarithmic x" + std::to_string(b.logarithmic));
  for (const auto& [order, count] : b.orders)
    parts.push_back("order " + std::to_string(order) + " x" + std::to_string(count) +
                    (b.periodic_families ? " per period" : ""));
  if (parts.empty()) return "none";
  std::string out = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) out += "; " + parts[k];
  return out;
}

inline void print_report(const SurfaceReport& r, std::ostream& os) {
  auto flag = [](bool b) { return b ? "true" : "false"; };
  if (r.sheets.is_finite()) os << "sheets: " << r.sheets.size() << "\n";
  else os << "sheets: countable, period " << r.sheets.period() << "\n";
  os << "columns: " << r.columns << "\n";
  os << "connected: " << flag(r.connected) << "\n";
  os << "realizable: " << flag(r.realizable) << "\n";
  os << "closed: " << flag(r.closed) << "\n";
  os << "branching:\n";
  for (const auto& b : r.branching) os << "  column " << b.column << ": " << branch_text(b) << "\n";
  os << "total_branching: " << optional_text(r.total_branching) << "\n";
  os << "euler_characteristic: " << optional_text(r.euler_characteristic) << "\n";
  os << "genus: " << optional_text(r.genus) << "\n";
}

inline nlohmann::ordered_json report_json(const SurfaceReport& r) {
  using nlohmann::ordered_json;
  auto opt = [](const std::optional<Sheet>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  ordered_json j;
  j["sheets"] = {{"kind", r.sheets.is_finite() ? "finite" : "periodic"},
                 {r.sheets.is_finite() ? "count" : "period", r.sheets.extent()}};
  j["columns"] = r.columns;
  j["connected"] = r.connected;
  j["realizable"] = r.realizable;
  j["closed"] = r.closed;
  j["branching"] = ordered_json::array();
  for (const auto& b : r.branching) {
    ordered_json orders = ordered_json::array();
    for (const auto& [order, count] : b.orders) orders.push_back({{"order", order}, {"multiplicity", count}});
    j["branching"].push_back({{"column", b.column},
                              {"orders", orders},
                              {"logarithmic", b.logarithmic},
                              {"periodic_families", b.periodic_families}});
  }
  j["total_branching"] = opt(r.total_branching);
  j["euler_characteristic"] = opt(r.euler_characteristic);
  j["genus"] = opt(r.genus);
  return j;
}

inline int validate(const std::string& file, std::ostream& out, std::ostream& err) {
  auto report = validate_profile_type(to_profile(load(file, err)));
  if (report.ok()) {
    out << "ok\n";
    return 0;
  }
  print_violations(report, out);
  out << "violations: " << report.violations.size() << "\n";
  return 1;
}

inline int cover(const std::string& file, std::ostream& out, std::ostream& err) {
  auto profile = to_profile(load(file, err));
  auto result = find_exact_covering(profile);
  if (!result) {
    const auto& walk = *result.failure;
    out << "coverable: no\n";
    out << "walk from line " << walk.start_line << ": " << vertex_trail(walk.path) << "\n";
    out << "returned to column 1 at line " << walk.end_line << ", expected line " << walk.start_line << "\n";
    return 1;
  }
  const auto& covering = *result.covering;
  out << "coverable: yes\n";
  if (covering.periodic()) {
    out << "path families: " << covering.paths.size() << " (translates by multiples of " << covering.sheets.period()
        << ")\n";
  } else {
    out << "paths: " << covering.paths.size() << "\n";
  }
  for (const auto& path : covering.paths)
    out << "path " << path.start_line() << ": " << vertex_trail(path) << "\n";
  return 0;
}

inline int invariants(const std::string& file, bool json, std::ostream& out, std::ostream& err) {
  auto report = surface_report(to_profile(load(file, err)));
  if (json) out << report_json(report).dump(2) << "\n";
  else print_report(report, out);
  return 0;
}

inline int convert(const std::string& file, const std::string& to, std::ostream& out, std::ostream& err) {
  auto doc = load(file, err);
  out << (to == "explicit" ? serialize_explicit(doc) : serialize_profile(doc));
  return 0;
}

inline int enumerate(Sheet n, int q, const EnumFilter& filter, bool cross_check, std::ostream& out) {
  if (cross_check) {
    auto summary = cross_check_theorem(n, q);
    out << "sheets: " << n << "\ncolumns: " << q << "\n";
    out << "instances: " << summary.instances << "\n";
    out << "coverable: " << summary.coverable << "\n";
    out << "disagreements: " << summary.disagreements.size() << "\n";
    for (const auto& d : summary.disagreements) out << "  " << d << "\n";
    return summary.disagreements.empty() ? 0 : 1;
  }
  std::size_t count = 0;
  for_each_constellation(n, q, filter, [&](const Constellation&) { ++count; });
  out << "sheets: " << n << "\ncolumns: " << q << "\n";
  out << "count: " << count << "\n";
  return 0;
}

inline int render(const std::string& file, const std::string& target, std::optional<std::string> style, bool overlay,
                  std::ostream& out, std::ostream& err) {
  auto profile = to_profile(load(file, err));
  std::optional<ExactCovering> covering;
  if (overlay) {
    covering = find_exact_covering(profile).covering;
    if (!covering) {
      err << "error: profile has no exact covering to overlay\n";
      return 1;
    }
  }
  if (!style) style = target.ends_with(".svg") ? "svg" : "dot";
  auto text = render_diagram(profile, *style == "svg" ? DiagramStyle::svg : DiagramStyle::dot, covering);
  if (target == "-") {
    out << text;
    return 0;
  }
  std::ofstream os(target, std::ios::binary);
  if (!(os << text)) {
    err << "error: cannot write " << target << "\n";
    return 2;
  }
  return 0;
}

}  // namespace detail

/// Runs one command line; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Profiles of Riemann surfaces: validation, exact coverings, gluing invariants", "profiles"};
  app.require_subcommand(1);

  std::string file;
  std::string to = "sigma";
  std::string target;
  std::optional<std::string> style;
  bool json = false;
  bool overlay = false;
  Sheet n = 0;
  int q = 0;
  EnumFilter filter;
  bool cross_check = false;

  auto* validate = app.add_subcommand("validate", "Check the profile-type axioms");
  validate->add_option("file", file, ".prof file")->required();
  auto* cover = app.add_subcommand("cover", "Find the exact covering or show the failing walk");
  cover->add_option("file", file, ".prof file")->required();
  auto* inv = app.add_subcommand("invariants", "Report sheets, branch data, Euler characteristic and genus");
  inv->add_option("file", file, ".prof file")->required();
  inv->add_flag("--json", json, "Emit JSON");
  auto* convert = app.add_subcommand("convert", "Write the canonical serialization");
  convert->add_option("file", file, ".prof file")->required();
  convert->add_option("--to", to, "Target form")->check(CLI::IsMember({"explicit", "sigma"}));
  auto* enumerate = app.add_subcommand("enumerate", "Count constellations or cross-check realizability");
  enumerate->add_option("--sheets", n, "Number of sheets n")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--columns", q, "Number of base points q")->required()->check(CLI::PositiveNumber);
  enumerate->add_flag("--transitive", filter.require_transitive, "Keep transitive constellations only");
  enumerate->add_flag("--identity-product", filter.require_identity_product, "Keep identity monodromy only");
  enumerate->add_flag("--cross-check", cross_check, "Compare forced walks, backtracking and monodromy");
  auto* render = app.add_subcommand("render", "Draw the profile as DOT or SVG");
  render->add_option("file", file, ".prof file")->required();
  render->add_option("-o,--output", target, "Output path, '-' for stdout")->required();
  render->add_option("--style", style, "dot or svg (default from the output extension)")
      ->check(CLI::IsMember({"dot", "svg"}));
  render->add_flag("--overlay-covering", overlay, "Color each covering path");

  std::vector<std::string> argv_storage{"profiles"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n";
    const CLI::App* where = &app;
    for (const auto* sub : app.get_subcommands()) where = sub;
    err << where->help();
    return 2;
  }

  try {
    if (validate->parsed()) return detail::validate(file, out, err);
    if (cover->parsed()) return detail::cover(file, out, err);
    if (inv->parsed()) return detail::invariants(file, json, out, err);
    if (convert->parsed()) return detail::convert(file, to, out, err);
    if (enumerate->parsed()) return detail::enumerate(n, q, filter, cross_check, out);
    if (render->parsed()) return detail::render(file, target, style, overlay, out, err);
  } catch (const detail::Failure& f) {
    return f.code;
  } catch (const InvalidProfile& e) {
    err << "error: " << e.what() << "\n";
    detail::print_violations(e.report(), err);
    return 1;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace profiles::cli
