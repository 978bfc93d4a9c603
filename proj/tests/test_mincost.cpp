#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sensorcov/coverage.hpp"
#include "sensorcov/mincost.hpp"

using namespace sensorcov;

namespace {

Deployment fixed(std::vector<double> xs) {
  Deployment d;
  d.positions = std::move(xs);
  return d;
}

}  // namespace

TEST(Grid, PointsAndAlignment) {
  const GridSpec g(5);
  EXPECT_DOUBLE_EQ(g.step(), 0.25);
  EXPECT_DOUBLE_EQ(g.point(3), 0.75);
  EXPECT_THROW(GridSpec(1), std::invalid_argument);
  for (long n : {1L, 3L, 10L, 80L}) {
    const GridSpec aligned = GridSpec(2048).aligned_to(n);
    EXPECT_GE(aligned.resolution, 2048);
    EXPECT_EQ((aligned.resolution - 1) % (2 * n), 0) << n;
  }
}

TEST(Oracle, ForcedSingleSensor) {
  const auto dp = min_cost_coverage_dp(fixed({0.9}), 0.5, 2.0, GridSpec(101));
  ASSERT_EQ(dp.optimal_positions.size(), 1u);
  EXPECT_DOUBLE_EQ(dp.optimal_positions[0], 0.5);
  EXPECT_NEAR(dp.cost, 0.16, 1e-15);
  EXPECT_TRUE(dp.covered);
  EXPECT_NEAR(brute_force_small(fixed({0.9}), 0.5, 2.0, GridSpec(101)).cost, 0.16, 1e-15);
}

TEST(Oracle, ForcedPair) {
  const auto dp = min_cost_coverage_dp(fixed({0.1, 0.2}), 0.25, 1.0, GridSpec(101));
  EXPECT_DOUBLE_EQ(dp.optimal_positions[0], 0.25);
  EXPECT_DOUBLE_EQ(dp.optimal_positions[1], 0.75);
  EXPECT_NEAR(dp.cost, 0.7, 1e-15);
  EXPECT_NEAR(brute_force_small(fixed({0.1, 0.2}), 0.25, 1.0, GridSpec(101)).cost, 0.7, 1e-15);
}

TEST(Oracle, RejectsInfeasible) {
  EXPECT_THROW(min_cost_coverage_dp(fixed({0.1, 0.2}), 0.2, 2.0, GridSpec(101)), std::invalid_argument);
  EXPECT_THROW(min_cost_coverage_dp(fixed({0.1}), 0.5, 0.5, GridSpec(101)), std::invalid_argument);
  EXPECT_THROW(min_cost_coverage_dp(fixed({0.1, 0.2, 0.3}), 0.4, 2.0, GridSpec(2)), std::invalid_argument);
  EXPECT_THROW(brute_force_small(sample_deployment(5, 1), 0.2, 2.0, GridSpec(51)), std::invalid_argument);
  EXPECT_THROW(brute_force_small(sample_deployment(2, 1), 0.3, 2.0, GridSpec(401)), std::invalid_argument);
}

TEST(Oracle, MatchesBruteForce) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const long n = 1 + trial % 4;
    const double r = 1.0 / (2.0 * n) + 0.05 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto dep = sample_deployment(n, 100 + trial);
    // 168 is a multiple of 2n for every n <= 4.
    const GridSpec grid(169);
    const auto dp = min_cost_coverage_dp(dep, r, 2.0, grid);
    const auto bf = brute_force_small(dep, r, 2.0, grid);
    EXPECT_EQ(dp.cost, bf.cost) << trial;
    EXPECT_TRUE(dp.covered);
    for (std::size_t i = 0; i < bf.assignment.size(); ++i) {
      EXPECT_DOUBLE_EQ(bf.positions[bf.assignment[i]], dp.optimal_positions[i]) << trial;
    }
  }
}

TEST(Oracle, BruteForceMatchesAtUnitExponent) {
  for (int trial = 0; trial < 20; ++trial) {
    const long n = 1 + trial % 4;
    const auto dep = sample_deployment(n, 300 + trial);
    const double r = 1.0 / (2.0 * n) + 0.03;
    const auto dp = min_cost_coverage_dp(dep, r, 1.0, GridSpec(81));
    const auto bf = brute_force_small(dep, r, 1.0, GridSpec(81));
    EXPECT_NEAR(dp.cost, bf.cost, 1e-14) << trial;
  }
}

TEST(Oracle, NeverWorseThanAnchors) {
  for (long n : {5L, 20L, 50L}) {
    const GridSpec grid = GridSpec(512).aligned_to(n);
    for (int s = 0; s < 5; ++s) {
      const auto dep = sample_deployment(n, 40 + s);
      const auto dp = min_cost_coverage_dp(dep, 1.0 / (2.0 * n), 2.0, grid);
      const auto anchor = anchor_strategy(dep, 2.0);
      EXPECT_LE(dp.cost, anchor.total_cost + dp.error_bound);
      EXPECT_TRUE(dp.covered);
    }
  }
}

TEST(Oracle, RefiningGridStaysWithinBound) {
  for (int s = 0; s < 5; ++s) {
    const long n = 6;
    const auto dep = sample_deployment(n, 70 + s);
    const double r = 1.0 / (2.0 * n) + 0.01;
    const auto coarse = min_cost_coverage_dp(dep, r, 2.0, GridSpec(241));
    const auto fine = min_cost_coverage_dp(dep, r, 2.0, GridSpec(481));
    EXPECT_LE(fine.cost, coarse.cost + fine.error_bound) << s;
    EXPECT_TRUE(fine.covered);
  }
}

TEST(Oracle, LargerRadiusNeverCostsMore) {
  const auto dep = sample_deployment(10, 9);
  const GridSpec grid(2001);
  double last = INFINITY;
  for (double r : {0.05, 0.06, 0.08, 0.12, 0.5}) {
    const auto dp = min_cost_coverage_dp(dep, r, 2.0, grid);
    EXPECT_LE(dp.cost, last + 1e-15);
    last = dp.cost;
  }
}
