#pragma once

#include <cstdlib>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <vector>

#include "permutation.hpp"

namespace profiles {

/**
 * The monodromy view of a profile: one sheet permutation per column.
 *
 * sigma(i) sends line j to the line reached by the arc leaving vertex (i, j).
 * Periodic permutations are normalized to the lcm of their periods here, so
 * every sigma shares one sheet set.
 */
class Constellation {
 public:
  explicit Constellation(std::vector<Permutation> sigmas) : sigmas_(std::move(sigmas)) {
    if (sigmas_.empty()) throw std::invalid_argument("constellation needs at least one column");
    const auto& first = sigmas_.front().sheet_set();
    Sheet period = 1;
    for (const auto& s : sigmas_) {
      if (s.sheet_set().kind() != first.kind() || (first.is_finite() && s.sheet_set() != first))
        throw std::invalid_argument("constellation permutations act on different sheet sets");
      if (first.is_periodic()) period = std::lcm(period, s.sheet_set().extent());
    }
    if (first.is_periodic())
      for (auto& s : sigmas_) s = s.with_period(period);
  }

  int columns() const { return static_cast<int>(sigmas_.size()); }
  const SheetSet& sheet_set() const { return sigmas_.front().sheet_set(); }

  /// Column indices are 1-based.
  const Permutation& sigma(int column) const {
    if (column < 1 || column > columns())
      throw std::out_of_range("column " + std::to_string(column) + " out of range");
    return sigmas_[static_cast<std::size_t>(column - 1)];
  }

  const std::vector<Permutation>& sigmas() const { return sigmas_; }

  friend bool operator==(const Constellation&, const Constellation&) = default;

 private:
  std::vector<Permutation> sigmas_;
};

/// sigma_k o ... o sigma_1, sigma_1 applied first.
inline Permutation prefix_product(const Constellation& c, int k) {
  Permutation out = Permutation::identity(c.sheet_set());
  for (int i = 1; i <= k; ++i) out = compose(out, c.sigma(i));
  return out;
}

/// sigma_q o ... o sigma_1: the permutation a column-1 walk undergoes in one sweep.
inline Permutation monodromy_product(const Constellation& c) { return prefix_product(c, c.columns()); }

namespace detail {

// Orbit flood-fill from sheet 1.
inline bool finite_transitive(const Constellation& c) {
  auto n = static_cast<std::size_t>(c.sheet_set().extent());
  std::vector<bool> seen(n, false);
  std::queue<Sheet> todo;
  seen[0] = true;
  todo.push(1);
  std::size_t reached = 1;
  while (!todo.empty()) {
    Sheet j = todo.front();
    todo.pop();
    for (const auto& s : c.sigmas()) {
      Sheet k = s(j);
      if (!seen[k - 1]) {
        seen[k - 1] = true;
        ++reached;
        todo.push(k);
      }
    }
  }
  return reached == n;
}

// The integers form one orbit iff the residue quotient is connected and the
// period shifts picked up around its cycles generate all of Z (gcd 1).
inline bool periodic_transitive(const Constellation& c) {
  Sheet p = c.sheet_set().extent();
  std::vector<Sheet> potential(static_cast<std::size_t>(p), 0);
  std::vector<bool> seen(static_cast<std::size_t>(p), false);
  std::vector<Sheet> order{0};
  seen[0] = true;
  Sheet shifts = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    Sheet r = order[head];
    for (const auto& s : c.sigmas()) {
      Sheet image = s(r + potential[r] * p);
      Sheet t = floor_mod(image, p);
      Sheet lift = floor_div(image, p);
      if (!seen[t]) {
        seen[t] = true;
        potential[t] = lift;
        order.push_back(t);
      } else {
        shifts = std::gcd(shifts, std::llabs(lift - potential[t]));
      }
    }
  }
  return static_cast<Sheet>(order.size()) == p && shifts == 1;
}

}  // namespace detail

/// Transitivity of the group generated by the sigmas on the sheet set.
inline bool is_transitive(const Constellation& c) {
  return c.sheet_set().is_finite() ? detail::finite_transitive(c) : detail::periodic_transitive(c);
}

}  // namespace profiles
