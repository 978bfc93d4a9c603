#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "sensorcov/coverage.hpp"
#include "sensorcov/expectation.hpp"
#include "sensorcov/experiments.hpp"

using namespace sensorcov;

namespace {

Deployment fixed(std::vector<double> xs) {
  Deployment d;
  d.positions = std::move(xs);
  return d;
}

std::vector<double> anchors(long n) {
  std::vector<double> t(n);
  for (long i = 1; i <= n; ++i) t[i - 1] = anchor_position(i, n).to_double();
  return t;
}

}  // namespace

TEST(Params, Validation) {
  EXPECT_NO_THROW(CoverageParams(0.1, 2.0));
  EXPECT_THROW(CoverageParams(0.0, 2.0), std::invalid_argument);
  EXPECT_THROW(CoverageParams(0.1, -1.0), std::invalid_argument);
}

TEST(Sampling, Deterministic) {
  const auto a = sample_deployment(5, 42);
  const auto b = sample_deployment(5, 42);
  EXPECT_EQ(a.positions, b.positions);
  EXPECT_EQ(a.seed, 42u);
  EXPECT_NE(a.positions, sample_deployment(5, 43).positions);
}

TEST(Sampling, SortedInUnitInterval) {
  const auto one = sample_deployment(1, 7);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_GE(one.positions[0], 0.0);
  EXPECT_LT(one.positions[0], 1.0);
  const auto big = sample_deployment(10000, 7);
  EXPECT_TRUE(std::is_sorted(big.positions.begin(), big.positions.end()));
  const double mean = std::accumulate(big.positions.begin(), big.positions.end(), 0.0) / 10000.0;
  EXPECT_NEAR(mean, 0.5, 4.0 / std::sqrt(12.0 * 10000.0));
}

TEST(Covered, Examples) {
  EXPECT_TRUE(is_covered(std::vector<double>{0.25, 0.75}, 0.25));
  EXPECT_FALSE(is_covered(std::vector<double>{0.2, 0.9}, 0.25));
  EXPECT_TRUE(is_covered(std::vector<double>{0.5}, 0.5));
  EXPECT_FALSE(is_covered(std::vector<double>{}, 0.5));
  EXPECT_FALSE(is_covered(std::vector<double>{0.3}, 0.5));
  EXPECT_THROW(is_covered(std::vector<double>{0.7, 0.2}, 0.5), std::invalid_argument);
}

TEST(Cost, Examples) {
  const std::vector<double> x{0.0, 1.0};
  const std::vector<double> y{0.25, 0.75};
  EXPECT_EQ(displacement_cost(x, x, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(displacement_cost(x, y, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(displacement_cost(x, y, 2.0), 0.125);
  EXPECT_THROW(displacement_cost(x, std::vector<double>{0.5}, 1.0), std::invalid_argument);
}

TEST(Anchor, Examples) {
  const auto still = anchor_strategy(fixed({0.5}), 2.0);
  EXPECT_EQ(still.final_positions, std::vector<double>{0.5});
  EXPECT_EQ(still.total_cost, 0.0);
  const auto ends = anchor_strategy(fixed({0.0, 1.0}), 1.0);
  EXPECT_EQ(ends.final_positions, (std::vector<double>{0.25, 0.75}));
  EXPECT_DOUBLE_EQ(ends.total_cost, 0.5);
  EXPECT_TRUE(ends.covered);
}

TEST(Anchor, OutcomeInvariants) {
  const auto dep = sample_deployment(50, 3);
  const auto out = anchor_strategy(dep, 1.5);
  ASSERT_EQ(out.final_positions.size(), 50u);
  ASSERT_EQ(out.displacements.size(), 50u);
  double sum = 0.0;
  for (std::size_t i = 0; i < 50; ++i) {
    EXPECT_DOUBLE_EQ(out.displacements[i], std::fabs(dep.positions[i] - out.final_positions[i]));
    sum += std::pow(out.displacements[i], 1.5);
  }
  EXPECT_NEAR(out.total_cost, sum, 1e-12 * sum);
  EXPECT_EQ(out.covered, is_covered(out.final_positions, out.radius));
}

TEST(Anchor, ExactCoverIsCritical) {
  for (long n : {1L, 2L, 7L, 100L}) {
    const auto out = anchor_strategy(sample_deployment(n, 11), 2.0);
    EXPECT_TRUE(out.covered);
    EXPECT_DOUBLE_EQ(out.radius, 1.0 / (2.0 * n));
    for (std::size_t i = 1; i < out.final_positions.size(); ++i) {
      EXPECT_NEAR(out.final_positions[i] - out.final_positions[i - 1], 1.0 / n, 1e-15);
    }
    for (double eps : {1e-9, 1e-6, 1e-3}) {
      if (eps >= out.radius) continue;
      EXPECT_FALSE(is_covered(out.final_positions, out.radius - eps)) << n << " " << eps;
    }
  }
}

TEST(Anchor, MeanMatchesExpectation) {
  constexpr long kTrials = 10000;
  std::vector<double> costs;
  for (long k = 0; k < kTrials; ++k) costs.push_back(anchor_strategy(sample_deployment(10, 500 + k), 2.0).total_cost);
  const auto stats = mc_summary(costs);
  EXPECT_NEAR(stats.mean, expected_anchor_cost_integer(10, 2).to_double(), 3 * stats.std_error);
}

TEST(Stretched, Examples) {
  const auto out = stretched_anchor_strategy(fixed({0.1, 0.2}), 2.0, 0.1);
  ASSERT_EQ(out.final_positions.size(), 2u);
  EXPECT_DOUBLE_EQ(out.final_positions[0], 0.3);
  EXPECT_DOUBLE_EQ(out.final_positions[1], 0.9);
  EXPECT_THROW(stretched_anchor_strategy(fixed({0.5}), 2.0, 0.0), std::invalid_argument);
}

TEST(Stretched, ApproachesAnchorsAndCovers) {
  const auto dep = sample_deployment(20, 5);
  const auto tiny = stretched_anchor_strategy(dep, 2.0, 1e-12);
  const auto t = anchors(20);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(tiny.final_positions[i], t[i], 1e-10);
  for (double f : {1e-6, 1e-3, 0.05, 0.5}) EXPECT_TRUE(stretched_anchor_strategy(dep, 2.0, f).covered) << f;
}

TEST(Pairing, OrderPreservingIsOptimalForConvexCost) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 5;
    std::vector<double> x(n);
    std::vector<double> y(n);
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = u(rng);
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    for (double a : {1.0, 1.5, 2.0, 3.0}) {
      const double sorted_cost = displacement_cost(x, y, a);
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      double best = INFINITY;
      do {
        double c = 0.0;
        for (int i = 0; i < n; ++i) c += std::pow(std::fabs(x[i] - y[perm[i]]), a);
        best = std::min(best, c);
      } while (std::next_permutation(perm.begin(), perm.end()));
      EXPECT_LE(sorted_cost, best + 1e-12) << "n=" << n << " a=" << a;
    }
  }
}

TEST(Alg1Params, ExamplesAtTwo) {
  const auto p = alg1_params(1000, 2.0);
  EXPECT_DOUBLE_EQ(p.p, 9.0);
  EXPECT_DOUBLE_EQ(p.q, 3.0);
  EXPECT_NEAR(p.x0, 131.8, 0.05);
  EXPECT_EQ(p.min_n, 132);
  EXPECT_EQ(p.subintervals, 16);
  EXPECT_EQ(p.picks, 20);
  EXPECT_EQ(p.occupancy_threshold, Rational(125, 6));
}

TEST(Alg1Params, RootInvariants) {
  for (double a : {0.5, 1.0, 2.0, 3.0, 4.0}) {
    const auto p = alg1_params(5000, a);
    EXPECT_DOUBLE_EQ(p.p, 3 * p.q);
    EXPECT_GE(p.x0, 3.0);
    EXPECT_NEAR(p.x0 / (p.p * std::log(p.x0)), 3.0, 1e-9);
    EXPECT_EQ(p.min_n, static_cast<long>(std::ceil(p.x0)));
    EXPECT_LE(Rational(p.picks), p.occupancy_threshold);
  }
}

TEST(Alg1Params, TooFewSensors) {
  EXPECT_THROW(alg1_params(131, 2.0), SensorCountTooSmall);
  try {
    alg1_params(50, 2.0);
  } catch (const SensorCountTooSmall& e) {
    EXPECT_EQ(e.min_n(), 132);
  }
}

TEST(Alg1Run, CrowdedDeploymentFallsBack) {
  const long n = 200;
  std::vector<double> xs(n);
  for (long i = 0; i < n; ++i) xs[i] = 0.001 + 0.00001 * i;
  const auto params = alg1_params(n, 2.0);
  const auto res = alg1_run(fixed(xs), params, 7.0 / (2.0 * n), 1);
  EXPECT_EQ(res.which, Alg1Case::kFallbackAnchors);
  const auto t = anchors(n);
  for (long i = 0; i < n; ++i) EXPECT_NEAR(res.outcome.final_positions[i], t[i], 1e-15);
  EXPECT_TRUE(res.outcome.covered);
}

TEST(Alg1Run, SpreadDeploymentUsesLocalAnchors) {
  const long n = 1000;
  const auto params = alg1_params(n, 2.0);
  const auto res = alg1_run(fixed(anchors(n)), params, 7.0 / (2.0 * n), 99);
  EXPECT_EQ(res.which, Alg1Case::kLocalAnchors);
  EXPECT_TRUE(res.outcome.covered);
  long moved = 0;
  for (double d : res.outcome.displacements) moved += d > 0.0;
  EXPECT_LE(moved, params.subintervals * params.picks);
}

TEST(Alg1Run, RandomTrialsCover) {
  const long n = 1000;
  const auto params = alg1_params(n, 2.0);
  for (long k = 0; k < 500; ++k) {
    const auto res = alg1_run(sample_deployment(n, deployment_seed(1, k)), params, 7.0 / (2.0 * n), pick_seed(1, k));
    ASSERT_TRUE(res.outcome.covered) << k;
  }
}

TEST(Alg1Run, PickSeedOnlyMovesChoice) {
  const long n = 400;
  const auto params = alg1_params(n, 2.0);
  const auto dep = sample_deployment(n, 8);
  const auto a = alg1_run(dep, params, 7.0 / (2.0 * n), 1);
  const auto b = alg1_run(dep, params, 7.0 / (2.0 * n), 1);
  const auto c = alg1_run(dep, params, 7.0 / (2.0 * n), 2);
  EXPECT_EQ(a.outcome.final_positions, b.outcome.final_positions);
  EXPECT_NE(a.outcome.final_positions, c.outcome.final_positions);
  EXPECT_EQ(a.outcome.initial_positions, c.outcome.initial_positions);
}

TEST(Alg1Run, Preconditions) {
  const long n = 200;
  const auto params = alg1_params(n, 2.0);
  const auto dep = sample_deployment(n, 1);
  EXPECT_THROW(alg1_run(dep, params, 5.9 / (2.0 * n), 1), std::invalid_argument);
  EXPECT_THROW(alg1_run(sample_deployment(300, 1), params, 7.0 / (2.0 * n), 1), std::invalid_argument);
}

TEST(Alg1Run, FallbackRateWithinOccupancyBound) {
  constexpr long kTrials = 100000;
  const long n = 1000;
  const auto params = alg1_params(n, 2.0);
  long fallbacks = 0;
  for (long k = 0; k < kTrials; ++k) {
    const auto res = alg1_run(sample_deployment(n, deployment_seed(7, k)), params, 7.0 / (2.0 * n), pick_seed(7, k));
    fallbacks += res.which == Alg1Case::kFallbackAnchors;
  }
  const double bound = 16e-6;
  const double rate = static_cast<double>(fallbacks) / kTrials;
  EXPECT_LE(rate, bound + 3 * std::sqrt(bound * (1 - bound) / kTrials));
}

TEST(Csv, DeploymentRoundTrip) {
  const auto dep = sample_deployment(25, 77);
  std::stringstream ss;
  write_deployment_csv(ss, dep);
  const auto back = read_deployment_csv(ss);
  EXPECT_EQ(back.seed, dep.seed);
  EXPECT_EQ(back.positions, dep.positions);
}

TEST(Csv, OutcomeColumns) {
  std::stringstream ss;
  write_outcome_csv(ss, anchor_strategy(fixed({0.0, 1.0}), 1.0));
  std::string line;
  long data = 0;
  bool header = false;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      EXPECT_EQ(line, "index,initial,final,displacement");
      header = true;
    } else {
      ++data;
    }
  }
  EXPECT_EQ(data, 2);
}
