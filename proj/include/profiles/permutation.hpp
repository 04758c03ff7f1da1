#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace profiles {

/// Sheet label. Finite sheet sets use 1..n, periodic sheet sets use all integers.
using Sheet = std::int64_t;

inline Sheet floor_mod(Sheet a, Sheet m) {
  Sheet r = a % m;
  return r < 0 ? r + m : r;
}

inline Sheet floor_div(Sheet a, Sheet m) { return (a - floor_mod(a, m)) / m; }

/**
 * The set of sheets (lines of a profile).
 *
 * Either the finite set 1..n, or the integers carrying a translation by a
 * fixed period p that every permutation over the set commutes with.
 */
class SheetSet {
 public:
  enum class Kind { finite, periodic };

  static SheetSet finite(Sheet n) {
    if (n < 1) throw std::invalid_argument("finite sheet set needs n >= 1");
    return SheetSet(Kind::finite, n);
  }

  static SheetSet periodic(Sheet p) {
    if (p < 1) throw std::invalid_argument("periodic sheet set needs period >= 1");
    return SheetSet(Kind::periodic, p);
  }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_periodic() const { return kind_ == Kind::periodic; }

  /// n for a finite set, p for a periodic set: the number of stored images.
  Sheet extent() const { return extent_; }

  Sheet size() const {
    if (!is_finite()) throw std::logic_error("periodic sheet set has no finite size");
    return extent_;
  }

  Sheet period() const {
    if (!is_periodic()) throw std::logic_error("finite sheet set has no period");
    return extent_;
  }

  bool contains(Sheet j) const { return is_periodic() || (j >= 1 && j <= extent_); }

  /// Representative labels: 1..n, or residues 0..p-1.
  std::vector<Sheet> representatives() const {
    std::vector<Sheet> out(static_cast<std::size_t>(extent_));
    std::iota(out.begin(), out.end(), is_finite() ? Sheet{1} : Sheet{0});
    return out;
  }

  friend bool operator==(const SheetSet&, const SheetSet&) = default;

 private:
  SheetSet(Kind kind, Sheet extent) : kind_(kind), extent_(extent) {}

  Kind kind_;
  Sheet extent_;
};

inline std::string to_string(const SheetSet& s) {
  return (s.is_finite() ? "FINITE " : "PERIODIC ") + std::to_string(s.extent());
}

/**
 * A bijection of a sheet set.
 *
 * Finite sets store image[j-1] = sigma(j). Periodic sets store the images
 * of residues 0..p-1 and extend by sigma(j + p) = sigma(j) + p.
 */
class Permutation {
 public:
  explicit Permutation(SheetSet sheets) : sheets_(sheets) {
    images_ = sheets_.representatives();
  }

  Permutation(SheetSet sheets, std::vector<Sheet> images)
      : sheets_(sheets), images_(std::move(images)) {
    if (static_cast<Sheet>(images_.size()) != sheets_.extent())
      throw std::invalid_argument("permutation needs " + std::to_string(sheets_.extent()) +
                                  " images, got " + std::to_string(images_.size()));
    std::vector<bool> hit(images_.size(), false);
    for (Sheet image : images_) {
      if (!sheets_.contains(image))
        throw std::invalid_argument("image " + std::to_string(image) + " outside sheet set");
      // Periodic: residues of the images must be a permutation of the residues.
      auto slot = static_cast<std::size_t>(sheets_.is_finite() ? image - 1
                                                               : floor_mod(image, sheets_.extent()));
      if (hit[slot]) throw std::invalid_argument("images are not a bijection");
      hit[slot] = true;
    }
  }

  static Permutation identity(SheetSet sheets) { return Permutation(sheets); }

  /// Builds a permutation of 1..n from disjoint cycles; fixed points may be omitted.
  static Permutation from_cycles(Sheet n, const std::vector<std::vector<Sheet>>& cycles) {
    auto sheets = SheetSet::finite(n);
    std::vector<Sheet> images = sheets.representatives();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const auto& cycle : cycles) {
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        Sheet from = cycle[k];
        if (from < 1 || from > n)
          throw std::invalid_argument("cycle label " + std::to_string(from) + " out of range");
        if (seen[from - 1])
          throw std::invalid_argument("cycle label " + std::to_string(from) + " repeated");
        seen[from - 1] = true;
        images[from - 1] = cycle[(k + 1) % cycle.size()];
      }
    }
    return Permutation(sheets, std::move(images));
  }

  const SheetSet& sheet_set() const { return sheets_; }
  const std::vector<Sheet>& images() const { return images_; }

  Sheet operator()(Sheet j) const {
    if (sheets_.is_finite()) {
      if (!sheets_.contains(j)) throw std::out_of_range("sheet " + std::to_string(j) + " out of range");
      return images_[static_cast<std::size_t>(j - 1)];
    }
    Sheet r = floor_mod(j, sheets_.extent());
    return images_[static_cast<std::size_t>(r)] + (j - r);
  }

  bool is_identity() const {
    auto reps = sheets_.representatives();
    return images_ == reps;
  }

  /// Re-expresses a periodic permutation over a multiple of its period.
  Permutation with_period(Sheet p) const {
    if (!sheets_.is_periodic()) throw std::logic_error("with_period on a finite permutation");
    if (p % sheets_.extent() != 0)
      throw std::invalid_argument("new period must be a multiple of the old one");
    std::vector<Sheet> images(static_cast<std::size_t>(p));
    for (Sheet r = 0; r < p; ++r) images[static_cast<std::size_t>(r)] = (*this)(r);
    return Permutation(SheetSet::periodic(p), std::move(images));
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    if (a.sheets_.kind() != b.sheets_.kind()) return false;
    if (a.sheets_.is_finite()) return a.sheets_ == b.sheets_ && a.images_ == b.images_;
    Sheet p = std::lcm(a.sheets_.extent(), b.sheets_.extent());
    return a.with_period(p).images_ == b.with_period(p).images_;
  }

 private:
  SheetSet sheets_;
  std::vector<Sheet> images_;
};

namespace detail {

// Brings two permutations onto one sheet set; periodic ones go to the lcm period.
inline std::pair<Permutation, Permutation> align(const Permutation& a, const Permutation& b) {
  const auto& sa = a.sheet_set();
  const auto& sb = b.sheet_set();
  if (sa.kind() != sb.kind() || (sa.is_finite() && sa != sb))
    throw std::invalid_argument("sheet-set mismatch: " + to_string(sa) + " vs " + to_string(sb));
  if (sa.is_finite()) return {a, b};
  Sheet p = std::lcm(sa.extent(), sb.extent());
  return {a.with_period(p), b.with_period(p)};
}

}  // namespace detail

/// j -> tau(sigma(j)): the left argument is applied first.
inline Permutation compose(const Permutation& sigma, const Permutation& tau) {
  auto [s, t] = detail::align(sigma, tau);
  std::vector<Sheet> images;
  images.reserve(s.images().size());
  for (Sheet j : s.sheet_set().representatives()) images.push_back(t(s(j)));
  return Permutation(s.sheet_set(), std::move(images));
}

inline Permutation inverse(const Permutation& sigma) {
  const auto& sheets = sigma.sheet_set();
  std::vector<Sheet> images(sigma.images().size());
  if (sheets.is_finite()) {
    for (Sheet j = 1; j <= sheets.extent(); ++j) images[static_cast<std::size_t>(sigma(j) - 1)] = j;
  } else {
    Sheet p = sheets.extent();
    for (Sheet r = 0; r < p; ++r) {
      Sheet s = sigma(r);
      Sheet t = floor_mod(s, p);
      images[static_cast<std::size_t>(t)] = r - (s - t);
    }
  }
  return Permutation(sheets, std::move(images));
}

/**
 * One orbit of a finite permutation, or one translation class of orbits of a
 * periodic permutation.
 *
 * `elements` is the cycle in cyclic order starting at its smallest label. For a
 * periodic class it is the trajectory of the smallest residue r0 until the
 * trajectory first returns to residue r0; `net_shift` counts how many periods
 * that return moved. Zero shift means a class of finite cycles (translates of
 * `elements`); a nonzero shift d means |d| bi-infinite orbits.
 */
struct Orbit {
  std::vector<Sheet> elements;
  std::vector<Sheet> residues;  // periodic only, sorted
  Sheet net_shift = 0;

  bool infinite() const { return net_shift != 0; }
  Sheet length() const { return static_cast<Sheet>(elements.size()); }
  Sheet infinite_orbit_count() const { return net_shift < 0 ? -net_shift : net_shift; }

  friend bool operator==(const Orbit&, const Orbit&) = default;
};

inline std::vector<Orbit> cycle_structure(const Permutation& sigma) {
  const auto& sheets = sigma.sheet_set();
  std::vector<Orbit> out;
  std::vector<bool> seen(static_cast<std::size_t>(sheets.extent()), false);
  if (sheets.is_finite()) {
    for (Sheet start = 1; start <= sheets.extent(); ++start) {
      if (seen[start - 1]) continue;
      Orbit orbit;
      for (Sheet j = start; !seen[j - 1]; j = sigma(j)) {
        seen[j - 1] = true;
        orbit.elements.push_back(j);
      }
      out.push_back(std::move(orbit));
    }
    return out;
  }
  Sheet p = sheets.extent();
  for (Sheet r0 = 0; r0 < p; ++r0) {
    if (seen[r0]) continue;
    Orbit orbit;
    Sheet j = r0;
    do {
      seen[floor_mod(j, p)] = true;
      orbit.elements.push_back(j);
      orbit.residues.push_back(floor_mod(j, p));
      j = sigma(j);
    } while (floor_mod(j, p) != r0);
    orbit.net_shift = (j - r0) / p;
    std::sort(orbit.residues.begin(), orbit.residues.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

}  // namespace profiles
