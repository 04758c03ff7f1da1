#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "covering.hpp"
#include "profile_graph.hpp"

namespace profiles {

enum class DiagramStyle { dot, svg };

namespace detail {

inline constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                                          "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};

// Arc whose head leaves the periodic window; `below` says which side.
struct CutArc {
  Vertex from;
  bool below;
};

// What gets drawn: the whole finite graph, or three periods of a periodic one.
struct Scene {
  int columns = 0;
  std::vector<Sheet> lines;
  bool periodic = false;
  std::vector<Link> edges;
  std::vector<Link> arcs;
  std::vector<CutArc> cut_arcs;
  std::map<Sheet, int> row;
};

inline Scene make_scene(const ProfileGraph& g) {
  Scene s;
  s.columns = g.columns();
  if (!g.is_implicit()) {
    s.lines = g.sheet_set().representatives();
    // Drawing order must not depend on the order items were added.
    s.edges = g.edges();
    s.arcs = g.arcs();
    std::sort(s.edges.begin(), s.edges.end(), [](const Link& a, const Link& b) {
      return std::tie(a.from.line, a.from.column, a.to) < std::tie(b.from.line, b.from.column, b.to);
    });
    std::sort(s.arcs.begin(), s.arcs.end());
  } else {
    const auto& c = *g.implicit_constellation();
    Sheet p = c.sheet_set().extent();
    s.periodic = true;
    for (Sheet j = 0; j < 3 * p; ++j) s.lines.push_back(j);
    for (Sheet j : s.lines)
      for (int i = 1; i <= s.columns; ++i) s.edges.push_back({{i, j}, {next_column(i, s.columns), j}});
    for (int i = 1; i <= s.columns; ++i)
      for (Sheet j : s.lines) {
        Sheet head = c.sigma(i)(j);
        if (head >= 0 && head < 3 * p) s.arcs.push_back({{i, j}, {i, head}});
        else s.cut_arcs.push_back({{i, j}, head >= 3 * p});
      }
  }
  for (std::size_t k = 0; k < s.lines.size(); ++k) s.row[s.lines[k]] = static_cast<int>(k);
  return s;
}

// Path index owning each item, keyed by (kind, column, line); periodic lines by residue.
class Overlay {
 public:
  Overlay(const std::optional<ExactCovering>& covering) {
    if (!covering) return;
    if (covering->periodic()) period_ = covering->sheets.extent();
    for (std::size_t k = 0; k < covering->paths.size(); ++k)
      for (const auto& s : covering->paths[k].steps) owner_[key(s.kind, s.from)] = k;
  }

  std::optional<std::size_t> path_of(StepKind kind, Vertex from) const {
    auto it = owner_.find(key(kind, from));
    if (it == owner_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t paths() const {
    std::size_t n = 0;
    for (const auto& [k, v] : owner_) n = std::max(n, v + 1);
    return n;
  }

 private:
  std::tuple<StepKind, int, Sheet> key(StepKind kind, Vertex v) const {
    return {kind, v.column, period_ ? floor_mod(v.line, period_) : v.line};
  }

  Sheet period_ = 0;
  std::map<std::tuple<StepKind, int, Sheet>, std::size_t> owner_;
};

inline std::string quoted(Vertex v) { return "\"" + std::to_string(v.column) + "," + std::to_string(v.line) + "\""; }

inline bool is_infinity_edge(const Link& e, int columns) {
  return e.to.column < e.from.column || (columns == 1 && e.from.column == e.to.column);
}

inline std::string render_dot(const Scene& s, const Overlay& overlay) {
  std::string out = "// profile: " + std::to_string(s.columns) + " columns, " + std::to_string(s.lines.size()) +
                    " lines" + (s.periodic ? " (three periods shown)" : "") + "\n";
  out += "digraph profile {\n  layout=neato;\n";
  out += "  node [shape=circle, width=0.1, height=0.1, fixedsize=true, label=\"\"];\n";
  out += "  edge [arrowsize=0.6];\n";
  for (Sheet j : s.lines)
    for (int i = 1; i <= s.columns; ++i) {
      Vertex v{i, j};
      out += "  " + quoted(v) + " [pos=\"" + std::to_string(2 * (i - 1)) + "," + std::to_string(-s.row.at(j)) +
             "!\", xlabel=\"(" + std::to_string(i) + "," + std::to_string(j) + ")\"];\n";
    }
  if (s.periodic)
    for (int i = 1; i <= s.columns; ++i) {
      out += "  \"above," + std::to_string(i) + "\" [shape=plaintext, label=\"...\", pos=\"" +
             std::to_string(2 * (i - 1)) + ",1!\"];\n";
      out += "  \"below," + std::to_string(i) + "\" [shape=plaintext, label=\"...\", pos=\"" +
             std::to_string(2 * (i - 1)) + "," + std::to_string(-static_cast<int>(s.lines.size())) + "!\"];\n";
    }
  auto color = [&](StepKind kind, Vertex from) -> std::string {
    auto k = overlay.path_of(kind, from);
    if (!k) return "";
    return ", color=\"" + std::string(kPalette[*k % kPalette.size()]) + "\"";
  };
  for (const auto& e : s.edges) {
    bool inf = is_infinity_edge(e, s.columns);
    out += "  " + quoted(e.from) + " -> " + quoted(e.to) + " [class=\"" + (inf ? "edge infinity" : "edge") +
           "\", dir=none" + (inf ? ", style=dashed" : "") + color(StepKind::edge, e.from) + "];\n";
  }
  for (const auto& a : s.arcs)
    out += "  " + quoted(a.from) + " -> " + quoted(a.to) + " [class=\"" + (a.from == a.to ? "arc loop" : "arc") +
           "\"" + color(StepKind::arc, a.from) + "];\n";
  for (const auto& a : s.cut_arcs)
    out += "  " + quoted(a.from) + " -> \"" + (a.below ? "below," : "above,") + std::to_string(a.from.column) +
           "\" [class=\"arc cut\"" + color(StepKind::arc, a.from) + "];\n";
  out += "}\n";
  return out;
}

inline std::string render_svg(const Scene& s, const Overlay& overlay) {
  constexpr int left = 60, top = 60, dx = 120, dy = 60, tail = 60;
  const int rows = static_cast<int>(s.lines.size());
  const int width = left + (s.columns - 1) * dx + tail + 40;
  const int height = top + (rows - 1) * dy + 60;
  auto x_of = [&](int column) { return left + (column - 1) * dx; };
  auto y_of = [&](Sheet line) { return top + s.row.at(line) * dy; };
  auto num = [](int v) { return std::to_string(v); };

  auto stroke = [&](StepKind kind, Vertex from, const char* marker) -> std::string {
    auto k = overlay.path_of(kind, from);
    std::string c = k ? kPalette[*k % kPalette.size()] : "#000000";
    std::string out = " stroke=\"" + c + "\"";
    if (k) out += " data-path=\"" + std::to_string(*k + 1) + "\"";
    if (marker) out += " marker-end=\"url(#arrow-" + (k ? std::to_string(*k + 1) : std::string("0")) + ")\"";
    return out;
  };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
                    num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
  out += "<defs>\n";
  for (std::size_t k = 0; k <= overlay.paths(); ++k) {
    std::string c = k == 0 ? "#000000" : kPalette[(k - 1) % kPalette.size()];
    out += "<marker id=\"arrow-" + std::to_string(k) +
           "\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
           "orient=\"auto\"><path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"" + c + "\"/></marker>\n";
  }
  out += "</defs>\n";
  out += "<g fill=\"none\" stroke-width=\"2\">\n";

  for (int i = 1; i <= s.columns; ++i)
    out += "<text class=\"column-label\" x=\"" + num(x_of(i)) + "\" y=\"" + num(top - 36) +
           "\" text-anchor=\"middle\" fill=\"#000000\" stroke=\"none\">a" + num(i) + "</text>\n";
  for (Sheet j : s.lines)
    out += "<text class=\"line-label\" x=\"" + num(left - 36) + "\" y=\"" + num(y_of(j) + 5) +
           "\" text-anchor=\"end\" fill=\"#000000\" stroke=\"none\">" + std::to_string(j) + "</text>\n";

  for (const auto& e : s.edges) {
    int y = y_of(e.from.line);
    if (is_infinity_edge(e, s.columns)) {
      out += "<path class=\"edge infinity\" d=\"M " + num(x_of(e.from.column)) + " " + num(y) + " H " +
             num(x_of(e.from.column) + tail) + " M " + num(x_of(e.to.column) - tail + 20) + " " + num(y) + " H " +
             num(x_of(e.to.column)) + "\" stroke-dasharray=\"6 4\"" + stroke(StepKind::edge, e.from, nullptr) +
             "/>\n";
    } else {
      out += "<line class=\"edge\" x1=\"" + num(x_of(e.from.column)) + "\" y1=\"" + num(y) + "\" x2=\"" +
             num(x_of(e.to.column)) + "\" y2=\"" + num(y_of(e.to.line)) + "\"" +
             stroke(StepKind::edge, e.from, nullptr) + "/>\n";
    }
  }

  for (const auto& a : s.arcs) {
    int x = x_of(a.from.column);
    int y1 = y_of(a.from.line);
    if (a.from == a.to) {
      out += "<circle class=\"arc loop\" cx=\"" + num(x + 8) + "\" cy=\"" + num(y1 - 8) + "\" r=\"8\"" +
             stroke(StepKind::arc, a.from, nullptr) + "/>\n";
      continue;
    }
    int y2 = y_of(a.to.line);
    int x2 = x_of(a.to.column);
    // Downward arcs bulge right, upward arcs left, so opposite arcs do not overlap.
    int bulge = (y2 > y1 ? 1 : -1) * (14 + 6 * std::abs(s.row.at(a.to.line) - s.row.at(a.from.line)));
    out += "<path class=\"arc\" d=\"M " + num(x) + " " + num(y1) + " Q " + num((x + x2) / 2 + bulge) + " " +
           num((y1 + y2) / 2) + " " + num(x2) + " " + num(y2) + "\"" + stroke(StepKind::arc, a.from, "arrow") +
           "/>\n";
  }

  for (const auto& a : s.cut_arcs) {
    int x = x_of(a.from.column);
    int y1 = y_of(a.from.line);
    int y2 = a.below ? height - 20 : 20;
    out += "<path class=\"arc cut\" d=\"M " + num(x) + " " + num(y1) + " L " + num(x + (a.below ? 10 : -10)) + " " +
           num(y2) + "\"" + stroke(StepKind::arc, a.from, "arrow") + "/>\n";
  }

  if (s.periodic)
    for (int i = 1; i <= s.columns; ++i) {
      out += "<text class=\"ellipsis\" x=\"" + num(x_of(i) + 24) + "\" y=\"" + num(top - 16) +
             "\" fill=\"#000000\" stroke=\"none\">...</text>\n";
      out += "<text class=\"ellipsis\" x=\"" + num(x_of(i) + 24) + "\" y=\"" + num(height - 8) +
             "\" fill=\"#000000\" stroke=\"none\">...</text>\n";
    }

  for (Sheet j : s.lines)
    for (int i = 1; i <= s.columns; ++i)
      out += "<circle class=\"vertex\" cx=\"" + num(x_of(i)) + "\" cy=\"" + num(y_of(j)) +
             "\" r=\"3\" fill=\"#000000\" stroke=\"none\"/>\n";
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace detail

/**
 * Draws a profile: lines horizontal in line order, columns left to right,
 * arcs vertical with arrowheads, loops as small circles, the edge through
 * infinity dashed. Periodic profiles show lines 0..3p-1 with ellipses. With a
 * covering, each path's items get their own color. Output is deterministic.
 */
inline std::string render_diagram(const ProfileGraph& g, DiagramStyle style,
                                  const std::optional<ExactCovering>& overlay = std::nullopt) {
  auto scene = detail::make_scene(g);
  detail::Overlay colors(overlay);
  return style == DiagramStyle::dot ? detail::render_dot(scene, colors) : detail::render_svg(scene, colors);
}

}  // namespace profiles
