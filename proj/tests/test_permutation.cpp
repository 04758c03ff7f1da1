#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "profiles.hpp"

using namespace profiles;

namespace {

Permutation finite(std::vector<Sheet> images) {
  auto n = static_cast<Sheet>(images.size());
  return Permutation(SheetSet::finite(n), std::move(images));
}

Permutation periodic(std::vector<Sheet> image0) {
  auto p = static_cast<Sheet>(image0.size());
  return Permutation(SheetSet::periodic(p), std::move(image0));
}

Permutation random_periodic(Sheet p, std::mt19937_64& rng) {
  std::vector<Sheet> residues(static_cast<std::size_t>(p));
  std::iota(residues.begin(), residues.end(), 0);
  std::shuffle(residues.begin(), residues.end(), rng);
  std::uniform_int_distribution<int> lift(-2, 2);
  for (auto& r : residues) r += p * lift(rng);
  return periodic(residues);
}

}  // namespace

TEST(Permutation, ComposeWithIdentityIsNeutral) {
  auto sigma = Permutation::from_cycles(4, {{1, 3, 2}});
  EXPECT_EQ(compose(Permutation::identity(SheetSet::finite(4)), sigma), sigma);
  EXPECT_EQ(compose(sigma, Permutation::identity(SheetSet::finite(4))), sigma);
}

TEST(Permutation, TranspositionIsAnInvolution) {
  auto t = Permutation::from_cycles(2, {{1, 2}});
  EXPECT_TRUE(compose(t, t).is_identity());
}

TEST(Permutation, OppositeShiftsCancel) {
  auto up = periodic({1});
  auto down = periodic({-1});
  EXPECT_TRUE(compose(up, down).is_identity());
}

TEST(Permutation, ComposeAppliesLeftFirst) {
  auto a = Permutation::from_cycles(3, {{1, 2}});
  auto b = Permutation::from_cycles(3, {{2, 3}});
  auto ab = compose(a, b);
  EXPECT_EQ(ab(1), 3);  // 1 -a-> 2 -b-> 3
  EXPECT_EQ(ab(2), 1);
  EXPECT_EQ(ab(3), 2);
}

TEST(Permutation, InverseReversesACycle) {
  EXPECT_EQ(inverse(Permutation::from_cycles(3, {{1, 2, 3}})), Permutation::from_cycles(3, {{1, 3, 2}}));
  EXPECT_TRUE(inverse(Permutation::identity(SheetSet::finite(5))).is_identity());
}

TEST(Permutation, PeriodicSwapIsItsOwnInverse) {
  auto swap = periodic({1, 0});
  auto inv = inverse(swap);
  EXPECT_EQ(inv, swap);
  for (Sheet j = -6; j <= 6; ++j) {
    EXPECT_EQ(oracle::periodic_apply(inv.images(), oracle::periodic_apply(swap.images(), j)), j);
  }
}

TEST(Permutation, RejectsNonBijections) {
  EXPECT_THROW(finite({1, 1}), std::invalid_argument);
  EXPECT_THROW(finite({1, 3}), std::invalid_argument);
  EXPECT_THROW(periodic({0, 2}), std::invalid_argument);  // both residues 0
  EXPECT_THROW(Permutation::from_cycles(3, {{1, 2}, {2, 3}}), std::invalid_argument);
  EXPECT_THROW(Permutation::from_cycles(3, {{1, 4}}), std::invalid_argument);
}

TEST(Permutation, ComposeRejectsSheetSetMismatch) {
  EXPECT_THROW(compose(Permutation::identity(SheetSet::finite(2)), Permutation::identity(SheetSet::finite(3))),
               std::invalid_argument);
  EXPECT_THROW(compose(Permutation::identity(SheetSet::finite(2)), Permutation::identity(SheetSet::periodic(2))),
               std::invalid_argument);
}

TEST(Permutation, PeriodicEqualityIgnoresThePeriodUsed) {
  auto shift = periodic({1});
  EXPECT_EQ(shift.with_period(3), shift);
  EXPECT_EQ(shift.with_period(3).images(), (std::vector<Sheet>{1, 2, 3}));
}

TEST(PermutationProperty, GroupLawsExhaustivelyUpToFive) {
  for (Sheet n = 1; n <= 5; ++n) {
    auto all = all_permutations(n);
    auto id = Permutation::identity(SheetSet::finite(n));
    for (const auto& a : all) {
      EXPECT_EQ(compose(a, id), a);
      EXPECT_EQ(compose(id, a), a);
      EXPECT_TRUE(compose(a, inverse(a)).is_identity());
      EXPECT_TRUE(compose(inverse(a), a).is_identity());
    }
    if (n > 4) continue;  // associativity is cubic in n!
    for (const auto& a : all)
      for (const auto& b : all)
        for (const auto& c : all) ASSERT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
  }
}

TEST(PermutationProperty, PeriodicGroupLawsOnAWindow) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    Sheet p1 = 1 + trial % 4;
    Sheet p2 = 1 + (trial / 4) % 4;
    auto a = random_periodic(p1, rng);
    auto b = random_periodic(p2, rng);
    auto c = random_periodic(p1, rng);
    auto ab = compose(a, b);
    Sheet w = 3 * std::max(p1, p2);
    for (Sheet j = -w; j <= w; ++j) {
      ASSERT_EQ(ab(j), oracle::periodic_apply(b.images(), oracle::periodic_apply(a.images(), j)));
      ASSERT_EQ(compose(a, inverse(a))(j), j);
    }
    ASSERT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
  }
}

TEST(PermutationProperty, PeriodicBijectivityMatchesWindowInjectivity) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> value(-6, 6);
  for (int trial = 0; trial < 2000; ++trial) {
    Sheet p = 1 + trial % 4;
    std::vector<Sheet> image0(static_cast<std::size_t>(p));
    for (auto& x : image0) x = value(rng);
    bool constructible = true;
    try {
      periodic(image0);
    } catch (const std::invalid_argument&) {
      constructible = false;
    }
    std::set<Sheet> images;
    bool injective = true;
    // Collisions need a translate by at most 12 periods, so +-16 periods catches them all.
    for (Sheet j = -16 * p; j <= 16 * p; ++j) injective &= images.insert(oracle::periodic_apply(image0, j)).second;
    ASSERT_EQ(constructible, injective) << "trial " << trial;
  }
}

TEST(PermutationProperty, BijectivityOnTheNarrowWindow) {
  // With images in [-p, 2p) two colliding translates differ by at most two
  // periods, so the window [-3p, 3p] already exposes every collision.
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 2000; ++trial) {
    Sheet p = 1 + trial % 4;
    std::uniform_int_distribution<Sheet> value(-p, 2 * p - 1);
    std::vector<Sheet> image0(static_cast<std::size_t>(p));
    for (auto& x : image0) x = value(rng);
    bool constructible = true;
    try {
      periodic(image0);
    } catch (const std::invalid_argument&) {
      constructible = false;
    }
    std::set<Sheet> images;
    bool injective = true;
    for (Sheet j = -3 * p; j <= 3 * p; ++j) injective &= images.insert(oracle::periodic_apply(image0, j)).second;
    ASSERT_EQ(constructible, injective) << "trial " << trial;
  }
}

TEST(CycleStructure, SingleThreeCycle) {
  auto orbits = cycle_structure(Permutation::from_cycles(3, {{1, 2, 3}}));
  ASSERT_EQ(orbits.size(), 1u);
  EXPECT_EQ(orbits[0].length(), 3);
  EXPECT_EQ(orbits[0].elements, (std::vector<Sheet>{1, 2, 3}));
}

TEST(CycleStructure, IdentityGivesFixedPoints) {
  auto orbits = cycle_structure(Permutation::identity(SheetSet::finite(2)));
  ASSERT_EQ(orbits.size(), 2u);
  EXPECT_EQ(orbits[0].length(), 1);
  EXPECT_EQ(orbits[1].length(), 1);
}

TEST(CycleStructure, CyclesStartAtTheirSmallestLabel) {
  auto orbits = cycle_structure(Permutation::from_cycles(5, {{4, 2}, {5, 3, 1}}));
  ASSERT_EQ(orbits.size(), 2u);
  EXPECT_EQ(orbits[0].elements, (std::vector<Sheet>{1, 5, 3}));
  EXPECT_EQ(orbits[1].elements, (std::vector<Sheet>{2, 4}));
}

TEST(CycleStructure, OppositeShiftsOnEvensAndOddsAreTwoInfiniteOrbits) {
  auto sigma = periodic({-2, 3});  // even j -> j - 2, odd j -> j + 2
  auto orbits = cycle_structure(sigma);
  ASSERT_EQ(orbits.size(), 2u);
  Sheet infinite = 0;
  for (const auto& o : orbits) {
    EXPECT_TRUE(o.infinite());
    infinite += o.infinite_orbit_count();
  }
  EXPECT_EQ(infinite, 2);
  auto window = oracle::window_orbits(sigma.images(), -20, 20);
  EXPECT_EQ(window.infinite, 2u);
  EXPECT_EQ(window.finite, 0u);
}

TEST(CycleStructure, NetShiftCountsOrbitsInAClass) {
  // j -> j + 2 on p = 1: the evens and the odds, one residue class.
  auto sigma = periodic({2});
  auto orbits = cycle_structure(sigma);
  ASSERT_EQ(orbits.size(), 1u);
  EXPECT_EQ(orbits[0].net_shift, 2);
  EXPECT_EQ(orbits[0].infinite_orbit_count(), 2);
  EXPECT_EQ(oracle::window_orbits(sigma.images(), -20, 20).infinite, 2u);
}

TEST(CycleStructure, PeriodicFiniteClass) {
  auto sigma = periodic({-1, 2});  // pairs (2k-1, 2k)
  auto orbits = cycle_structure(sigma);
  ASSERT_EQ(orbits.size(), 1u);
  EXPECT_FALSE(orbits[0].infinite());
  EXPECT_EQ(orbits[0].elements, (std::vector<Sheet>{0, -1}));
  EXPECT_EQ(orbits[0].residues, (std::vector<Sheet>{0, 1}));
}

TEST(CycleStructureProperty, PartitionsTheSheetsExhaustively) {
  for (Sheet n = 1; n <= 6; ++n)
    for (const auto& sigma : all_permutations(n)) {
      std::vector<int> hits(static_cast<std::size_t>(n), 0);
      for (const auto& o : cycle_structure(sigma))
        for (std::size_t k = 0; k < o.elements.size(); ++k) {
          ++hits[o.elements[k] - 1];
          ASSERT_EQ(sigma(o.elements[k]), o.elements[(k + 1) % o.elements.size()]);
        }
      for (int h : hits) ASSERT_EQ(h, 1);
    }
}

TEST(CycleStructureProperty, PeriodicClassesAgreeWithWindowSimulation) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    auto sigma = random_periodic(1 + trial % 3, rng);
    Sheet infinite = 0;
    for (const auto& o : cycle_structure(sigma)) infinite += o.infinite_orbit_count();
    // Shifts stay below 3 periods per step, so a window of +-200 holds every chain's structure.
    auto window = oracle::window_orbits(sigma.images(), -200, 200);
    ASSERT_EQ(static_cast<std::size_t>(infinite), window.infinite) << "trial " << trial;
  }
}

TEST(Constellation, MonodromyOfTheTorusIsTrivial) {
  auto t = Permutation::from_cycles(2, {{1, 2}});
  EXPECT_TRUE(monodromy_product(Constellation({t, t, t, t})).is_identity());
}

TEST(Constellation, MonodromyOfTwoThreeCycles) {
  auto c3 = Permutation::from_cycles(3, {{1, 2, 3}});
  EXPECT_EQ(monodromy_product(Constellation({c3, c3})), Permutation::from_cycles(3, {{1, 3, 2}}));
}

TEST(Constellation, ArcsinMonodromyIsTrivialOnAWindow) {
  Constellation arcsin({periodic({1, 0}), periodic({-1, 2}), periodic({-2, 3})});
  EXPECT_TRUE(monodromy_product(arcsin).is_identity());
  EXPECT_TRUE(oracle::product_is_identity(arcsin));
  for (Sheet j = -8; j <= 8; ++j) {
    Sheet x = j;
    for (const auto& s : arcsin.sigmas()) x = oracle::periodic_apply(s.images(), x);
    EXPECT_EQ(x, j);
  }
}

TEST(Constellation, NormalizesPeriodsToTheirLcm) {
  Constellation c({periodic({1, 0}), periodic({1, 2, 0})});
  EXPECT_EQ(c.sheet_set(), SheetSet::periodic(6));
  for (const auto& s : c.sigmas()) EXPECT_EQ(s.sheet_set(), SheetSet::periodic(6));
}

TEST(Constellation, RejectsMixedSheetSets) {
  EXPECT_THROW(Constellation({Permutation::identity(SheetSet::finite(2)), Permutation::identity(SheetSet::finite(3))}),
               std::invalid_argument);
  EXPECT_THROW(Constellation(std::vector<Permutation>{}), std::invalid_argument);
}

TEST(Constellation, PeriodicTransitivity) {
  EXPECT_TRUE(is_transitive(Constellation({periodic({1})})));
  EXPECT_FALSE(is_transitive(Constellation({periodic({2})})));      // evens and odds
  EXPECT_FALSE(is_transitive(Constellation({periodic({1, 0})})));   // finite pairs only
  EXPECT_TRUE(is_transitive(Constellation({periodic({1, 0}), periodic({-1, 2})})));
  EXPECT_FALSE(is_transitive(Constellation({periodic({0, 1})})));   // identity
}
