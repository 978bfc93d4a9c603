#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sensorcov/rational.hpp"
#include "sensorcov/table.hpp"

namespace sensorcov {

struct ExperimentSpec {
  std::string name;
  double a = 2.0;
  std::vector<long> n_list;
  long trials = 1000;
  std::uint64_t base_seed = 1;
  double f = 7.0;                // subinterval algorithm radius multiplier, r = f/(2n)
  std::vector<double> beta;      // threshold exponents, r = 1/(2n) + n^-beta/2
  long grid = 2048;
  double tol = 1e-10;
  long exact_odd_max_n = 200;    // above this, odd a falls back to quadrature
  std::string out_path;

  void validate() const;
  // Every parameter as "key=value" pairs for output headers.
  std::vector<std::pair<std::string, std::string>> describe() const;
};

struct SummaryStats {
  double mean = 0.0;
  double stddev = 0.0;
  double std_error = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  long trials = 0;
};

// Needs at least two samples.
SummaryStats mc_summary(std::span<const double> samples);

// Seeds for trial k of an experiment.
std::uint64_t deployment_seed(std::uint64_t base_seed, long trial);
std::uint64_t pick_seed(std::uint64_t base_seed, long trial);

struct ExpectedCost {
  double value = 0.0;
  std::optional<Rational> exact;
  std::string method;  // "exact_even", "exact_integer" or "numeric"
};

// Expected anchor cost S(n) by the cheapest applicable route.
ExpectedCost expected_anchor_cost(long n, double a, double tol, long exact_odd_max_n = 200);

struct ConvergenceRow {
  long n = 0;
  ExpectedCost expected;
  std::optional<SummaryStats> mc;
  double normalized = 0.0;  // n^{a/2-1} S(n)
  std::optional<Rational> leading_constant;
};

struct ConvergenceResult {
  ExperimentSpec spec;
  std::vector<ConvergenceRow> rows;
  Table table() const;
};

ConvergenceResult run_convergence(const ExperimentSpec& spec);

struct ThresholdRow {
  double beta = 0.0;
  long n = 0;
  double r = 0.0;
  long grid_used = 0;
  SummaryStats oracle;
  double anchor_expected = 0.0;
  double ratio = 0.0;
  double mean_error_bound = 0.0;
  bool all_covered = true;
};

struct ThresholdResult {
  ExperimentSpec spec;
  std::vector<ThresholdRow> rows;
  Table table() const;
};

// beta = +inf means f(n) = 0.
ThresholdResult run_threshold(const ExperimentSpec& spec);

struct Alg1Row {
  long n = 0;
  long subintervals = 0;
  long picks = 0;
  SummaryStats cost;
  double predictor = 0.0;  // (ln n / n)^{a/2} n^{1-a/2}
  double ratio = 0.0;
  long case1_count = 0;
  double case1_frequency = 0.0;
  bool all_covered = true;
};

struct Alg1Result {
  ExperimentSpec spec;
  std::vector<Alg1Row> rows;
  double fitted_slope = std::numeric_limits<double>::quiet_NaN();
  Table table() const;
};

Alg1Result run_alg1(const ExperimentSpec& spec);

// Least-squares slope of log y against log x.
double log_log_slope(std::span<const double> x, std::span<const double> y);

struct Claim1Report {
  long n = 0;
  double a = 0.0;
  long subintervals = 0;
  Rational occupancy_threshold;
  long cutoff = 0;          // tail is P(Bin(n, 1/K) < cutoff)
  Rational exact_tail;
  double chernoff = 0.0;    // exp(-delta^2 m / 2)
  Rational union_bound;     // K * tail
  double claim_bound = 0.0; // K / n^{1+a/2}
  double chernoff_threshold = 0.0;  // n/K - sqrt((2+a)(n/K) ln n)
  bool threshold_below_chernoff_point = false;
  bool tail_within_chernoff = false;
  bool union_within_claim = false;

  Table table() const;
};

Claim1Report run_claim1_exact(long n, double a);

struct ScalingReport {
  long m = 0;
  double x = 0.0;
  double a = 0.0;
  SummaryStats cost;
  double target = 0.0;  // x^a S(m)
  bool pass = false;

  Table table() const;
};

// Anchor strategy inside [0, x] against x^a times the unit-interval expectation.
ScalingReport run_scaling_check(long m, double x, double a, long trials, std::uint64_t base_seed = 1,
                                double tol = 1e-10);

}  // namespace sensorcov
