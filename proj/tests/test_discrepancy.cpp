#include <gtest/gtest.h>

#include <random>

#include "equilens/discrepancy.hpp"
#include "equilens/errors.hpp"
#include "equilens/sequences.hpp"
#include "test_util.hpp"

using namespace equilens;
using namespace equilens::discrepancy;
using R = Rational;

namespace {

PointSet equispaced(std::int64_t N) {
  std::vector<std::vector<R>> rows;
  for (std::int64_t n = 0; n < N; ++n) rows.push_back({R(n, N)});
  return fixtures::rationals(rows);
}

// fixtures shared with tests/oracles/frozen_values.py
PointSet set_1d() { return fixtures::rationals({{R(1, 10)}, {R(7, 20)}, {R(4, 5)}}); }
PointSet set_2d() {
  return fixtures::rationals({{R(1, 10), R(7, 10)}, {R(11, 20), R(1, 5)}, {R(9, 10), R(19, 20)}});
}
PointSet halton(std::size_t N) { return sequences::generate(sequences::parse_sequence("halton:2,3"), N); }

}  // namespace

TEST(Discrepancy, IntervalFromIndex) {
  auto full = interval_from_index({0}, {2}, {{2}, {1}});
  ASSERT_TRUE(full);
  EXPECT_EQ(full->lower[0], R(0, 1));
  EXPECT_EQ(full->upper[0], R(1, 1));
  auto j = interval_from_index({1}, {3}, {{2}, {2}});
  ASSERT_TRUE(j);
  EXPECT_EQ(j->lower[0], R(1, 2));
  EXPECT_EQ(j->upper[0], R(3, 4));
  auto k = interval_from_index({2}, {1}, {{2}, {2}});
  ASSERT_TRUE(k);
  EXPECT_EQ(k->lower[0], R(1, 4));
  EXPECT_EQ(k->upper[0], R(1, 2));
  EXPECT_FALSE(interval_from_index({1}, {2}, {{2}, {2}}));
  EXPECT_THROW(interval_from_index({4}, {1}, {{2}, {2}}), ArgumentError);
}

TEST(Discrepancy, LocalDiscrepancy) {
  auto origin = fixtures::rationals({{R(0, 1)}});
  EXPECT_DOUBLE_EQ(local_discrepancy(origin, 1, {{R(0, 1)}, {R(1, 1)}}), 0.0);
  EXPECT_DOUBLE_EQ(local_discrepancy(origin, 1, {{R(0, 1)}, {R(1, 2)}}), 0.5);
  EXPECT_DOUBLE_EQ(local_discrepancy(equispaced(5), 5, {{R(0, 1)}, {R(2, 5)}}), 0.0);
}

TEST(Discrepancy, DiscreteExamples) {
  auto origin = fixtures::rationals({{R(0, 1)}});
  ResolutionVector g1{{2}, {1}};
  EXPECT_DOUBLE_EQ(discrete_discrepancy(origin, 1, g1), 0.5);
  EXPECT_DOUBLE_EQ(discrete_star_discrepancy(origin, 1, g1), 0.5);
  EXPECT_DOUBLE_EQ(discrete_discrepancy(equispaced(4), 4, {{2}, {2}}), 0.0);
}

TEST(Discrepancy, DiscreteMatchesOracle) {
  EXPECT_DOUBLE_EQ(discrete_discrepancy(set_1d(), 3, {{2}, {3}}), 3.0 / 8.0);
  EXPECT_DOUBLE_EQ(discrete_star_discrepancy(set_1d(), 3, {{2}, {3}}), 7.0 / 24.0);
  EXPECT_DOUBLE_EQ(discrete_discrepancy(set_2d(), 3, {{2, 2}, {2, 3}}), 15.0 / 32.0);
  EXPECT_DOUBLE_EQ(discrete_star_discrepancy(set_2d(), 3, {{2, 2}, {2, 3}}), 5.0 / 16.0);
  EXPECT_DOUBLE_EQ(discrete_discrepancy(halton(7), 7, {{2, 3}, {2, 2}}), 5.0 / 21.0);
  EXPECT_DOUBLE_EQ(discrete_star_discrepancy(halton(7), 7, {{2, 3}, {2, 2}}), 4.0 / 21.0);
}

TEST(Discrepancy, DiscreteMatchesBruteForce) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    PointSet ps(9, 2);
    for (std::size_t n = 0; n < 9; ++n) {
      for (std::size_t i = 0; i < 2; ++i) ps.set(n, i, UnitCoordinate::from_double(unif(rng)));
    }
    ResolutionVector res{{2, 3}, {3, 2}};
    double ext = 0.0, star = 0.0;
    for (int a0 = 0; a0 < 8; ++a0) {
      for (int b0 = a0 + 1; b0 <= 8; ++b0) {
        for (int a1 = 0; a1 < 9; ++a1) {
          for (int b1 = a1 + 1; b1 <= 9; ++b1) {
            BadicInterval J{{R(a0, 8), R(a1, 9)}, {R(b0, 8), R(b1, 9)}};
            const double v = std::abs(local_discrepancy(ps, 9, J));
            ext = std::max(ext, v);
            if (a0 == 0 && a1 == 0) star = std::max(star, v);
          }
        }
      }
    }
    EXPECT_NEAR(discrete_discrepancy(ps, 9, res), ext, 1e-15);
    EXPECT_NEAR(discrete_star_discrepancy(ps, 9, res), star, 1e-15);
  }
}

TEST(Discrepancy, EpsilonBounds) {
  auto e = epsilon_bounds({{2, 2}, {3, 3}});
  EXPECT_DOUBLE_EQ(e.epsilon, 0.4375);
  EXPECT_DOUBLE_EQ(e.epsilon_star, 0.234375);
  EXPECT_DOUBLE_EQ(e.delta, 0.125);
  EXPECT_LE(e.epsilon, e.extreme_cap);
  EXPECT_LE(e.epsilon_star, e.star_cap);
  EXPECT_DOUBLE_EQ(epsilon_bounds({{2}, {1}}).epsilon_star, 0.5);
}

TEST(Discrepancy, StarOneDimensional) {
  EXPECT_DOUBLE_EQ(exact_star_discrepancy_1d(equispaced(4), 4), 0.25);
  EXPECT_DOUBLE_EQ(exact_star_discrepancy_1d(fixtures::doubles({{0.0}, {0.5}}), 2), 0.5);
  EXPECT_DOUBLE_EQ(exact_star_discrepancy_1d(fixtures::doubles({{0.5}}), 1), 0.5);
  EXPECT_THROW(exact_star_discrepancy_1d(set_2d(), 3), ArgumentError);
}

TEST(Discrepancy, ExtremeOracle) {
  EXPECT_DOUBLE_EQ(exact_extreme_discrepancy_small(fixtures::rationals({{R(0, 1)}}), 1), 1.0);
  EXPECT_DOUBLE_EQ(exact_extreme_discrepancy_small(equispaced(4), 4), 0.25);
  // brute force over near-critical half-open boxes, within s * 1e-9 below the sup
  const std::pair<PointSet, double> cases[] = {
      {set_1d(), 0.449999999}, {set_2d(), 0.67499999835}, {halton(5), 0.49999999858333333}};
  for (const auto& [ps, lower] : cases) {
    const double v = exact_extreme_discrepancy_small(ps, ps.size());
    EXPECT_GE(v, lower - 1e-15);
    EXPECT_LE(v, lower + 2.1e-9);
  }
  EXPECT_THROW(exact_extreme_discrepancy_small(halton(65), 65), ResourceLimitError);
}

TEST(Discrepancy, ExtremeOracleBoundsStar) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t N = 1 + static_cast<std::size_t>(trial % 12);
    PointSet ps(N, 1);
    for (std::size_t n = 0; n < N; ++n) ps.set(n, 0, UnitCoordinate::from_double(unif(rng)));
    const double star = exact_star_discrepancy_1d(ps, N);
    const double ext = exact_extreme_discrepancy_small(ps, N);
    EXPECT_LE(star, ext + 1e-15);
    EXPECT_LE(ext, 2.0 * star + 1e-15);
  }
}

TEST(Discrepancy, VanDerCorputPrefix) {
  auto vdc = sequences::generate(sequences::parse_sequence("halton:2"), 256);
  for (int g = 1; g <= 8; ++g) {
    EXPECT_EQ(discrete_star_discrepancy(vdc, std::size_t{1} << g, {{2}, {g}}), 0.0) << g;
  }
}

TEST(Discrepancy, RhoG) {
  ResolutionVector res{{2, 3}, {2, 1}};
  EXPECT_EQ(rho_g({1, 2}, {3, 1}, res), 1.0);
  EXPECT_DOUBLE_EQ(rho_g({4, 0}, {1, 1}, res), 1.0 / 48.0);
  EXPECT_EQ(v_b(0, 2), 0);
  EXPECT_EQ(v_b(4, 2), 3);
}

TEST(Discrepancy, SpectralTest) {
  auto q = discrepancy_spectral_test(equispaced(4), 4, {{2}, {2}}, false);
  EXPECT_EQ(q.grid_branch, 0.0);
  EXPECT_LE(q.value, 0.125);
  EXPECT_DOUBLE_EQ(q.tail_cap, 0.125);

  // grid branch already above the tail cap
  auto origin = fixtures::rationals({{R(0, 1)}});
  auto o = discrepancy_spectral_test(origin, 1, {{2}, {2}}, false);
  EXPECT_DOUBLE_EQ(o.value, discrete_discrepancy(origin, 1, {{2}, {2}}));
  EXPECT_EQ(o.tail_branch, 0.0);

  for (bool star : {false, true}) {
    auto h = discrepancy_spectral_test(halton(11), 11, {{2, 3}, {2, 1}}, star);
    EXPECT_GE(h.value, h.grid_branch);
    EXPECT_LE(h.value, std::max(h.grid_branch, h.tail_cap));
  }
}

TEST(Discrepancy, ChooseResolution) {
  EXPECT_EQ(choose_resolution(0.5, {2}).g, (std::vector<int>{4}));
  EXPECT_EQ(choose_resolution(1.0, {2, 3}).g, (std::vector<int>{4, 2}));
  EXPECT_THROW(choose_resolution(0.0, {2}), ArgumentError);
}

TEST(Discrepancy, Budgets) {
  ResolutionVector huge{{2, 2}, {60, 1}};
  EXPECT_THROW(discrete_discrepancy(halton(4), 4, huge), ArgumentError);
  ResolutionVector big{{2, 2}, {13, 13}};
  EXPECT_THROW(discrete_discrepancy(halton(4), 4, big), ResourceLimitError);
}
