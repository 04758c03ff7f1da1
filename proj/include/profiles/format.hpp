#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "constellation.hpp"
#include "conversion.hpp"
#include "permutation.hpp"
#include "profile_graph.hpp"

// The .prof text format, line oriented, '#' starts a comment:
//
//   PROFILE v1
//   SHEETS FINITE <n>            | SHEETS PERIODIC <p>
//   COLUMNS <q>
//   SIGMA <i> = (1 2)(3 5 4)     | SIGMA <i> = ()   | SIGMA <i> = MAP 0-><a0> 1-><a1> ...
//   EDGE <line> <column>
//   ARC <column> <from_line> > <to_line>
//
// A document holds either one SIGMA line per column or EDGE/ARC lines
// (finite sheets only).

namespace profiles {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

struct SigmaBlock {
  std::vector<Permutation> sigmas;

  friend bool operator==(const SigmaBlock&, const SigmaBlock&) = default;
};

struct ExplicitBlock {
  std::vector<EdgeSeg> edges;
  std::vector<Arc> arcs;

  friend bool operator==(const ExplicitBlock&, const ExplicitBlock&) = default;
};

struct ProfileDocument {
  int version = 1;
  SheetSet sheets;
  int columns = 0;
  std::variant<SigmaBlock, ExplicitBlock> block;

  bool is_explicit() const { return std::holds_alternative<ExplicitBlock>(block); }

  friend bool operator==(const ProfileDocument&, const ProfileDocument&) = default;
};

inline constexpr std::int64_t kMaxSheets = 1'000'000;
inline constexpr std::int64_t kMaxColumns = 10'000;
inline constexpr std::int64_t kMaxCells = 10'000'000;
inline constexpr std::int64_t kMaxLabel = 1'000'000'000'000;

namespace detail {

class Cursor {
 public:
  Cursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& message) const { fail_at(pos_, message); }

  [[noreturn]] void fail_at(std::size_t pos, const std::string& message) const {
    throw ParseError(line_, pos + 1, message);
  }

  std::size_t pos() const { return pos_; }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ == text_.size();
  }

  void expect_end() {
    if (!at_end()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

  std::string_view word() {
    skip_ws();
    auto begin = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(begin, pos_ - begin);
  }

  void expect_word(std::string_view w) {
    auto at = (skip_ws(), pos_);
    if (word() != w) fail_at(at, "expected '" + std::string(w) + "'");
  }

  bool peek(std::string_view token) {
    skip_ws();
    return text_.substr(pos_).starts_with(token);
  }

  void expect(std::string_view token) {
    if (!peek(token)) fail("expected '" + std::string(token) + "'");
    pos_ += token.size();
  }

  /// Decimal integer with optional leading '-'; must end at whitespace, ')' or '-' (of '->').
  std::int64_t integer(bool allow_negative, std::string_view what) {
    skip_ws();
    auto begin = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      if (!allow_negative) fail("negative numbers are only allowed in PERIODIC MAP images");
      ++pos_;
    }
    auto digits = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (pos_ == digits) fail_at(begin, "expected " + std::string(what));
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + begin, text_.data() + pos_, value);
    if (ec != std::errc() || value > kMaxLabel || value < -kMaxLabel)
      fail_at(begin, std::string(what) + " out of range");
    if (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c != ' ' && c != '\t' && c != '\r' && c != ')' && c != '-' && c != '(')
        fail("unexpected '" + std::string(1, c) + "' after " + std::string(what));
    }
    return value;
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

class DocumentParser {
 public:
  ProfileDocument parse(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t begin = 0;
    while (begin <= text.size()) {
      auto end = text.find('\n', begin);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      statement(text.substr(begin, end - begin), line_no);
      begin = end + 1;
    }
    // Problems found at the end point just past the last line.
    std::size_t lines = text.empty() ? 0 : line_no - (text.back() == '\n' ? 1 : 0);
    return finish(lines + 1);
  }

 private:
  void statement(std::string_view raw, std::size_t line_no) {
    auto content = raw.substr(0, raw.find('#'));
    for (std::size_t k = 0; k < content.size(); ++k) {
      auto c = static_cast<unsigned char>(content[k]);
      if (c >= 0x80 || (c < 0x20 && c != '\t' && c != '\r'))
        throw ParseError(line_no, k + 1, "non-ASCII or control byte");
    }
    Cursor cur(content, line_no);
    if (cur.at_end()) return;
    auto at = cur.pos();
    auto keyword = cur.word();
    if (!header_) {
      if (keyword != "PROFILE") cur.fail_at(at, "expected 'PROFILE v1'");
      auto vat = (cur.skip_ws(), cur.pos());
      if (cur.word() != "v1") cur.fail_at(vat, "unsupported format version (expected v1)");
      cur.expect_end();
      header_ = true;
    } else if (keyword == "SHEETS") {
      sheets_line(cur, at);
    } else if (keyword == "COLUMNS") {
      if (columns_) cur.fail_at(at, "duplicate COLUMNS");
      if (block_started()) cur.fail_at(at, "COLUMNS must precede SIGMA/EDGE/ARC lines");
      auto q = cur.integer(false, "column count");
      if (q < 1 || q > kMaxColumns) cur.fail("column count must be in 1.." + std::to_string(kMaxColumns));
      cur.expect_end();
      columns_ = static_cast<int>(q);
      check_size(cur);
    } else if (keyword == "SIGMA") {
      sigma_line(cur, at);
    } else if (keyword == "EDGE" || keyword == "ARC") {
      explicit_line(cur, at, keyword == "EDGE");
    } else if (keyword == "PROFILE") {
      cur.fail_at(at, "duplicate PROFILE header");
    } else {
      cur.fail_at(at, keyword.empty() ? "expected a keyword" : "unknown keyword '" + std::string(keyword) + "'");
    }
  }

  bool block_started() const { return !sigmas_.empty() || !edges_.empty() || !arcs_.empty(); }

  void check_size(const Cursor& cur) const {
    if (sheets_ && columns_ && sheets_->extent() * *columns_ > kMaxCells)
      cur.fail("profile too large (sheets x columns > " + std::to_string(kMaxCells) + ")");
  }

  void require_shape(const Cursor& cur, std::size_t at) const {
    if (!sheets_ || !columns_) cur.fail_at(at, "SHEETS and COLUMNS must come first");
  }

  void sheets_line(Cursor& cur, std::size_t at) {
    if (sheets_) cur.fail_at(at, "duplicate SHEETS");
    if (block_started()) cur.fail_at(at, "SHEETS must precede SIGMA/EDGE/ARC lines");
    auto kat = (cur.skip_ws(), cur.pos());
    auto kind = cur.word();
    if (kind != "FINITE" && kind != "PERIODIC") cur.fail_at(kat, "expected FINITE or PERIODIC");
    std::string what = kind == "FINITE" ? "sheet count" : "period";
    auto n = cur.integer(false, what);
    if (n < 1 || n > kMaxSheets) cur.fail(what + " must be in 1.." + std::to_string(kMaxSheets));
    cur.expect_end();
    sheets_ = kind == "FINITE" ? SheetSet::finite(n) : SheetSet::periodic(n);
    check_size(cur);
  }

  void sigma_line(Cursor& cur, std::size_t at) {
    require_shape(cur, at);
    if (!edges_.empty() || !arcs_.empty()) cur.fail_at(at, "cannot mix SIGMA with EDGE/ARC lines");
    auto iat = (cur.skip_ws(), cur.pos());
    auto i = cur.integer(false, "column index");
    if (i < 1 || i > *columns_) cur.fail_at(iat, "column index must be in 1.." + std::to_string(*columns_));
    if (sigmas_.contains(static_cast<int>(i))) cur.fail_at(iat, "duplicate SIGMA " + std::to_string(i));
    cur.expect("=");
    auto sigma = sheets_->is_finite() ? cycles(cur) : map(cur);
    sigmas_.emplace(static_cast<int>(i), std::move(sigma));
  }

  Permutation cycles(Cursor& cur) {
    Sheet n = sheets_->extent();
    if (cur.peek("MAP")) cur.fail("MAP form requires PERIODIC sheets");
    std::vector<Sheet> images = sheets_->representatives();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    bool identity = false;
    int groups = 0;
    while (!cur.at_end()) {
      if (identity) cur.fail("'()' must stand alone");
      auto gat = cur.pos();
      cur.expect("(");
      std::vector<Sheet> cycle;
      while (!cur.peek(")")) {
        if (cur.at_end()) cur.fail("unterminated cycle");
        auto lat = (cur.skip_ws(), cur.pos());
        auto label = cur.integer(false, "sheet label");
        if (label < 1 || label > n) cur.fail_at(lat, "label " + std::to_string(label) + " out of range 1.." + std::to_string(n));
        if (seen[label - 1]) cur.fail_at(lat, "label " + std::to_string(label) + " repeated");
        seen[label - 1] = true;
        cycle.push_back(label);
      }
      cur.expect(")");
      if (cycle.empty()) {
        if (groups > 0) cur.fail_at(gat, "empty cycle");
        identity = true;
      }
      for (std::size_t k = 0; k < cycle.size(); ++k) images[cycle[k] - 1] = cycle[(k + 1) % cycle.size()];
      ++groups;
    }
    if (groups == 0) cur.fail("expected cycles such as (1 2) or ()");
    return Permutation(*sheets_, std::move(images));
  }

  Permutation map(Cursor& cur) {
    Sheet p = sheets_->extent();
    if (cur.peek("(")) cur.fail("PERIODIC sheets need the MAP form");
    cur.expect_word("MAP");
    std::vector<std::optional<Sheet>> images(static_cast<std::size_t>(p));
    std::map<Sheet, Sheet> residue_owner;
    while (!cur.at_end()) {
      auto rat = (cur.skip_ws(), cur.pos());
      auto r = cur.integer(false, "residue");
      if (r >= p) cur.fail_at(rat, "residue " + std::to_string(r) + " out of range 0.." + std::to_string(p - 1));
      if (images[r]) cur.fail_at(rat, "residue " + std::to_string(r) + " mapped twice");
      cur.expect("->");
      auto aat = (cur.skip_ws(), cur.pos());
      auto a = cur.integer(true, "image");
      auto [it, fresh] = residue_owner.emplace(floor_mod(a, p), r);
      if (!fresh)
        cur.fail_at(aat, "MAP is not a bijection: images of " + std::to_string(it->second) + " and " +
                             std::to_string(r) + " have the same residue");
      images[r] = a;
    }
    std::vector<Sheet> out;
    for (Sheet r = 0; r < p; ++r) {
      if (!images[r]) cur.fail("MAP is missing residue " + std::to_string(r));
      out.push_back(*images[r]);
    }
    return Permutation(*sheets_, std::move(out));
  }

  void explicit_line(Cursor& cur, std::size_t at, bool edge) {
    require_shape(cur, at);
    if (!sheets_->is_finite()) cur.fail_at(at, "EDGE/ARC lines require FINITE sheets");
    if (!sigmas_.empty()) cur.fail_at(at, "cannot mix EDGE/ARC with SIGMA lines");
    auto label = [&](std::string_view what) {
      auto lat = (cur.skip_ws(), cur.pos());
      auto v = cur.integer(false, what);
      if (v < 1 || v > sheets_->extent())
        cur.fail_at(lat, std::string(what) + " " + std::to_string(v) + " out of range 1.." + std::to_string(sheets_->extent()));
      return v;
    };
    auto column = [&] {
      auto cat = (cur.skip_ws(), cur.pos());
      auto v = cur.integer(false, "column");
      if (v < 1 || v > *columns_)
        cur.fail_at(cat, "column " + std::to_string(v) + " out of range 1.." + std::to_string(*columns_));
      return static_cast<int>(v);
    };
    if (edge) {
      auto line = label("line");
      auto c = column();
      cur.expect_end();
      edges_.push_back({line, c});
    } else {
      auto c = column();
      auto from = label("line");
      cur.expect(">");
      auto to = label("line");
      cur.expect_end();
      arcs_.push_back({c, from, to});
    }
  }

  ProfileDocument finish(std::size_t end_line) {
    auto fail = [&](const std::string& m) -> ParseError { return ParseError(end_line, 1, m); };
    if (!header_) throw fail("expected 'PROFILE v1'");
    if (!sheets_) throw fail("missing SHEETS line");
    if (!columns_) throw fail("missing COLUMNS line");
    if (sigmas_.empty() && edges_.empty() && arcs_.empty()) throw fail("no SIGMA or EDGE/ARC lines");
    if (!sigmas_.empty()) {
      SigmaBlock block;
      for (int i = 1; i <= *columns_; ++i) {
        auto it = sigmas_.find(i);
        if (it == sigmas_.end()) throw fail("missing SIGMA " + std::to_string(i));
        block.sigmas.push_back(it->second);
      }
      return {1, *sheets_, *columns_, std::move(block)};
    }
    return {1, *sheets_, *columns_, ExplicitBlock{std::move(edges_), std::move(arcs_)}};
  }

  bool header_ = false;
  std::optional<SheetSet> sheets_;
  std::optional<int> columns_;
  std::map<int, Permutation> sigmas_;
  std::vector<EdgeSeg> edges_;
  std::vector<Arc> arcs_;
};

}  // namespace detail

/// Parses a .prof document; every rejection is a ParseError with line and column.
inline ProfileDocument parse_profile(std::string_view text) { return detail::DocumentParser().parse(text); }

inline ProfileGraph to_profile(const ProfileDocument& doc) {
  if (const auto* sigma = std::get_if<SigmaBlock>(&doc.block)) return from_constellation(Constellation(sigma->sigmas));
  const auto& block = std::get<ExplicitBlock>(doc.block);
  ProfileGraph g(doc.columns, doc.sheets);
  for (const auto& e : block.edges) g.add_edge(e);
  for (const auto& a : block.arcs) g.add_arc(a);
  return g;
}

inline ProfileDocument to_document(const Constellation& c) {
  return {1, c.sheet_set(), c.columns(), SigmaBlock{c.sigmas()}};
}

/// Explicit-form document of a finite explicit graph whose edges and arcs have the EdgeSeg/Arc shape.
inline ProfileDocument to_explicit_document(const ProfileGraph& g) {
  if (g.is_implicit()) throw std::invalid_argument("explicit form needs a finite profile");
  ExplicitBlock block;
  for (const auto& e : g.edges()) {
    if (e.from.line != e.to.line || e.to.column != next_column(e.from.column, g.columns()))
      throw std::invalid_argument("edge " + to_string(e.from) + " - " + to_string(e.to) + " has no EDGE form");
    block.edges.push_back({e.from.line, e.from.column});
  }
  for (const auto& a : g.arcs()) {
    if (a.from.column != a.to.column)
      throw std::invalid_argument("arc " + to_string(a.from) + " -> " + to_string(a.to) + " has no ARC form");
    block.arcs.push_back({a.from.column, a.from.line, a.to.line});
  }
  std::sort(block.edges.begin(), block.edges.end());
  std::sort(block.arcs.begin(), block.arcs.end());
  return {1, g.sheet_set(), g.columns(), std::move(block)};
}

namespace detail {

inline std::string header(const ProfileDocument& doc) {
  return "PROFILE v1\nSHEETS " + to_string(doc.sheets) + "\nCOLUMNS " + std::to_string(doc.columns) + "\n";
}

inline std::string sigma_text(const Permutation& sigma) {
  if (sigma.sheet_set().is_periodic()) {
    std::string out = "MAP";
    for (Sheet r = 0; r < sigma.sheet_set().extent(); ++r)
      out += " " + std::to_string(r) + "->" + std::to_string(sigma(r));
    return out;
  }
  std::string out;
  for (const auto& orbit : cycle_structure(sigma)) {
    if (orbit.length() == 1) continue;
    out += "(";
    for (std::size_t k = 0; k < orbit.elements.size(); ++k)
      out += (k ? " " : "") + std::to_string(orbit.elements[k]);
    out += ")";
  }
  return out.empty() ? "()" : out;
}

}  // namespace detail

/**
 * Canonical SIGMA form: cycles start at their smallest label and are sorted by
 * it, fixed points omitted, single spaces, LF line ends. Explicit documents are
 * converted first and must satisfy the local profile axioms.
 */
inline std::string serialize_profile(const ProfileDocument& doc) {
  std::vector<Permutation> sigmas;
  if (const auto* block = std::get_if<SigmaBlock>(&doc.block)) sigmas = block->sigmas;
  else sigmas = to_constellation(to_profile(doc)).sigmas();
  std::string out = detail::header(doc);
  for (std::size_t i = 0; i < sigmas.size(); ++i)
    out += "SIGMA " + std::to_string(i + 1) + " = " + detail::sigma_text(sigmas[i]) + "\n";
  return out;
}

/// EDGE/ARC form, sorted; finite documents only.
inline std::string serialize_explicit(const ProfileDocument& doc) {
  if (!doc.sheets.is_finite()) throw std::invalid_argument("explicit form requires FINITE sheets");
  auto explicit_doc = to_explicit_document(to_profile(doc));
  const auto& block = std::get<ExplicitBlock>(explicit_doc.block);
  std::string out = detail::header(doc);
  for (const auto& e : block.edges)
    out += "EDGE " + std::to_string(e.line) + " " + std::to_string(e.from_column) + "\n";
  for (const auto& a : block.arcs)
    out += "ARC " + std::to_string(a.column) + " " + std::to_string(a.from_line) + " > " + std::to_string(a.to_line) + "\n";
  return out;
}

}  // namespace profiles
