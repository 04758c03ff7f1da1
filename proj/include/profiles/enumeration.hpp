#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "constellation.hpp"
#include "conversion.hpp"
#include "covering.hpp"
#include "permutation.hpp"

namespace profiles {

struct EnumFilter {
  bool require_transitive = false;
  bool require_identity_product = false;
};

inline constexpr std::uint64_t kEnumerationBudget = 10'000'000;

/// All permutations of 1..n in lexicographic order of their image arrays.
inline std::vector<Permutation> all_permutations(Sheet n) {
  auto sheets = SheetSet::finite(n);
  std::vector<Sheet> images = sheets.representatives();
  std::vector<Permutation> out;
  do {
    out.emplace_back(sheets, images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

namespace detail {

inline void check_budget(Sheet n, int q) {
  if (n < 1 || q < 1) throw std::invalid_argument("enumeration needs n >= 1 and q >= 1");
  std::uint64_t factorial = 1;
  for (Sheet k = 2; k <= n; ++k) {
    factorial *= static_cast<std::uint64_t>(k);
    if (factorial > kEnumerationBudget) throw std::length_error("enumeration budget exceeded");
  }
  std::uint64_t total = 1;
  for (int i = 0; i < q; ++i) {
    total *= factorial;
    if (total > kEnumerationBudget)
      throw std::length_error("enumeration budget exceeded: (" + std::to_string(n) + "!)^" + std::to_string(q) +
                              " > " + std::to_string(kEnumerationBudget));
  }
}

}  // namespace detail

/**
 * Visits every constellation of q permutations of 1..n passing `filter`, in
 * lexicographic order of the tuple (sigma_1 most significant). Throws
 * std::length_error when (n!)^q exceeds the enumeration budget.
 */
inline void for_each_constellation(Sheet n, int q, const EnumFilter& filter,
                                   const std::function<void(const Constellation&)>& visit) {
  detail::check_budget(n, q);
  auto perms = all_permutations(n);
  std::vector<std::size_t> digits(static_cast<std::size_t>(q), 0);
  while (true) {
    std::vector<Permutation> sigmas;
    sigmas.reserve(digits.size());
    for (auto d : digits) sigmas.push_back(perms[d]);
    Constellation c(std::move(sigmas));
    if ((!filter.require_identity_product || monodromy_product(c).is_identity()) &&
        (!filter.require_transitive || is_transitive(c)))
      visit(c);
    std::size_t k = digits.size();
    while (k > 0 && ++digits[k - 1] == perms.size()) digits[--k] = 0;
    if (k == 0) return;
  }
}

inline std::vector<Constellation> enumerate_constellations(Sheet n, int q, const EnumFilter& filter = {}) {
  std::vector<Constellation> out;
  for_each_constellation(n, q, filter, [&](const Constellation& c) { out.push_back(c); });
  return out;
}

struct CrossCheckSummary {
  Sheet sheets = 0;
  int columns = 0;
  std::size_t instances = 0;
  std::size_t coverable = 0;
  std::vector<std::string> disagreements;
};

/**
 * Runs the realizability criterion three ways on every transitive
 * constellation of the given size: forced walks, the backtracking oracle,
 * and the identity-product test.
 */
inline CrossCheckSummary cross_check_theorem(Sheet n, int q) {
  if (n * q > kOracleCellLimit)
    throw std::length_error("cross check limited to n * q <= " + std::to_string(kOracleCellLimit));
  CrossCheckSummary summary{n, q};
  for_each_constellation(n, q, {.require_transitive = true}, [&](const Constellation& c) {
    ++summary.instances;
    auto profile = from_constellation(c);
    bool walks = find_exact_covering(profile).covering.has_value();
    bool oracle = backtracking_cover_oracle(profile).has_value();
    bool product = monodromy_product(c).is_identity();
    if (walks) ++summary.coverable;
    if (walks != oracle || walks != product) {
      std::string tuple;
      for (const auto& s : c.sigmas()) {
        tuple += "[";
        for (Sheet x : s.images()) tuple += std::to_string(x);
        tuple += "]";
      }
      summary.disagreements.push_back(tuple + " walks=" + std::to_string(walks) + " oracle=" +
                                      std::to_string(oracle) + " product=" + std::to_string(product));
    }
  });
  return summary;
}

namespace detail {

// Uniform integer in [0, bound) from 64-bit draws by rejection of the biased tail.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace detail

/**
 * Reproducible uniform random constellation. Generator contract: one
 * std::mt19937_64 seeded with `seed`; for columns 1..q in turn, start from the
 * identity images [1..n] and run Fisher-Yates for k = n-1 down to 1, swapping
 * slot k with slot uniform_below(k + 1), where uniform_below(b) draws 64-bit
 * words, rejects those >= 2^64 - 1 - ((2^64 - 1) mod b), and returns word mod b.
 */
inline Constellation random_constellation(Sheet n, int q, std::uint64_t seed) {
  if (n < 1 || q < 1) throw std::invalid_argument("random_constellation needs n >= 1 and q >= 1");
  std::mt19937_64 rng(seed);
  auto sheets = SheetSet::finite(n);
  std::vector<Permutation> sigmas;
  for (int i = 0; i < q; ++i) {
    auto images = sheets.representatives();
    for (auto k = images.size() - 1; k > 0; --k)
      std::swap(images[k], images[detail::uniform_below(rng, k + 1)]);
    sigmas.emplace_back(sheets, std::move(images));
  }
  return Constellation(std::move(sigmas));
}

}  // namespace profiles
