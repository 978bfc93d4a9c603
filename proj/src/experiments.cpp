#include "sensorcov/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "sensorcov/combinatorics.hpp"
#include "sensorcov/coverage.hpp"
#include "sensorcov/expectation.hpp"
#include "sensorcov/mincost.hpp"

namespace sensorcov {

namespace {

std::string join(const auto& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ' ';
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>) {
      out += format_number(v);
    } else {
      out += std::to_string(v);
    }
  }
  return out;
}

bool is_integer_exponent(double a) { return a >= 1.0 && a == std::floor(a) && a < 1e6; }

// One trial has no spread estimate; report NaN rather than reject it.
SummaryStats summarize(std::span<const double> samples) {
  if (samples.size() >= 2) return mc_summary(samples);
  SummaryStats s;
  s.trials = static_cast<long>(samples.size());
  s.mean = samples.empty() ? std::numeric_limits<double>::quiet_NaN() : samples.front();
  s.stddev = s.std_error = s.ci95_low = s.ci95_high = std::numeric_limits<double>::quiet_NaN();
  return s;
}

Table base_table(const ExperimentSpec& spec, std::vector<std::string> columns) {
  Table t;
  t.metadata = spec.describe();
  t.columns = std::move(columns);
  return t;
}

}  // namespace

void ExperimentSpec::validate() const {
  if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (n_list.empty()) throw std::invalid_argument("experiment: n list is empty");
  if (!(a > 0.0)) throw std::invalid_argument("experiment: a must be > 0");
  for (const long n : n_list) {
    if (n < 1) throw std::invalid_argument("experiment: every n must be >= 1");
  }
}

std::vector<std::pair<std::string, std::string>> ExperimentSpec::describe() const {
  return {
      {"experiment", name},
      {"a", format_number(a)},
      {"n_list", join(n_list)},
      {"trials", std::to_string(trials)},
      {"base_seed", std::to_string(base_seed)},
      {"f", format_number(f)},
      {"beta", join(beta)},
      {"grid", std::to_string(grid)},
      {"tol", format_number(tol)},
      {"exact_odd_max_n", std::to_string(exact_odd_max_n)},
      {"seeding", "deployment seed = base_seed + k; pick seed = seed_seq(base_seed, k, \"pick\")"},
  };
}

SummaryStats mc_summary(std::span<const double> samples) {
  if (samples.size() < 2) throw std::invalid_argument("mc_summary: need at least 2 samples");
  long double sum = 0.0L;
  for (const double v : samples) sum += v;
  const auto count = static_cast<long double>(samples.size());
  const long double mean = sum / count;
  long double ss = 0.0L;
  for (const double v : samples) ss += (v - mean) * (v - mean);
  SummaryStats s;
  s.trials = static_cast<long>(samples.size());
  s.mean = static_cast<double>(mean);
  s.stddev = static_cast<double>(std::sqrt(ss / (count - 1.0L)));
  s.std_error = s.stddev / std::sqrt(static_cast<double>(count));
  s.ci95_low = s.mean - 1.96 * s.std_error;
  s.ci95_high = s.mean + 1.96 * s.std_error;
  return s;
}

std::uint64_t deployment_seed(std::uint64_t base_seed, long trial) {
  return base_seed + static_cast<std::uint64_t>(trial);
}

std::uint64_t pick_seed(std::uint64_t base_seed, long trial) {
  const auto k = static_cast<std::uint64_t>(trial);
  std::seed_seq seq{static_cast<std::uint32_t>(base_seed), static_cast<std::uint32_t>(base_seed >> 32),
                    static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32),
                    std::uint32_t{'p'}, std::uint32_t{'i'}, std::uint32_t{'c'}, std::uint32_t{'k'}};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

ExpectedCost expected_anchor_cost(long n, double a, double tol, long exact_odd_max_n) {
  ExpectedCost out;
  if (is_integer_exponent(a)) {
    const auto ai = static_cast<long>(a);
    if (ai % 2 == 0) {
      out.exact = expected_anchor_cost_even(n, ai);
      out.method = "exact_even";
    } else if (n <= exact_odd_max_n) {
      out.exact = expected_anchor_cost_integer(n, ai);
      out.method = "exact_integer";
    }
  }
  if (out.exact) {
    out.value = out.exact->to_double();
  } else {
    out.value = expected_anchor_cost_numeric(n, a, tol).total;
    out.method = "numeric";
  }
  return out;
}

ConvergenceResult run_convergence(const ExperimentSpec& spec) {
  spec.validate();
  ConvergenceResult result;
  result.spec = spec;
  const bool even = is_integer_exponent(spec.a) && static_cast<long>(spec.a) % 2 == 0;
  for (const long n : spec.n_list) {
    ConvergenceRow row;
    row.n = n;
    row.expected = expected_anchor_cost(n, spec.a, spec.tol, spec.exact_odd_max_n);
    std::vector<double> costs(static_cast<std::size_t>(spec.trials));
    for (long k = 0; k < spec.trials; ++k) {
      costs[k] = anchor_strategy(sample_deployment(n, deployment_seed(spec.base_seed, k)), spec.a).total_cost;
    }
    row.mc = summarize(costs);
    row.normalized = std::pow(static_cast<double>(n), spec.a / 2.0 - 1.0) * row.expected.value;
    if (even) row.leading_constant = leading_constant(static_cast<long>(spec.a));
    result.rows.push_back(std::move(row));
  }
  return result;
}

Table ConvergenceResult::table() const {
  Table t = base_table(spec, {"n", "a", "method", "expected", "exact", "mc_mean", "mc_stderr", "mc_trials",
                              "normalized", "leading_constant"});
  for (const auto& row : rows) {
    t.add_row({std::to_string(row.n), format_number(spec.a), row.expected.method,
               format_number(row.expected.value), row.expected.exact ? row.expected.exact->str() : "",
               format_number(row.mc->mean), format_number(row.mc->std_error), std::to_string(row.mc->trials),
               format_number(row.normalized),
               row.leading_constant ? format_number(row.leading_constant->to_double()) : ""});
  }
  return t;
}

ThresholdResult run_threshold(const ExperimentSpec& spec) {
  spec.validate();
  if (!(spec.a >= 1.0)) throw std::invalid_argument("threshold: a must be >= 1");
  if (spec.beta.empty()) throw std::invalid_argument("threshold: beta list is empty");
  ThresholdResult result;
  result.spec = spec;
  for (const double beta : spec.beta) {
    for (const long n : spec.n_list) {
      if (n > 100) throw std::invalid_argument("threshold: oracle runs are limited to n <= 100");
      ThresholdRow row;
      row.beta = beta;
      row.n = n;
      const double fn = std::isinf(beta) ? 0.0 : std::pow(static_cast<double>(n), -beta);
      row.r = 1.0 / (2.0 * n) + fn / 2.0;
      const GridSpec grid = GridSpec(spec.grid).aligned_to(n);
      row.grid_used = grid.resolution;
      std::vector<double> costs(static_cast<std::size_t>(spec.trials));
      double bound_sum = 0.0;
      for (long k = 0; k < spec.trials; ++k) {
        const auto res = min_cost_coverage_dp(sample_deployment(n, deployment_seed(spec.base_seed, k)), row.r,
                                              spec.a, grid);
        costs[k] = res.cost;
        bound_sum += res.error_bound;
        row.all_covered = row.all_covered && res.covered;
      }
      row.oracle = summarize(costs);
      row.mean_error_bound = bound_sum / static_cast<double>(spec.trials);
      row.anchor_expected = expected_anchor_cost(n, spec.a, spec.tol, spec.exact_odd_max_n).value;
      row.ratio = row.oracle.mean / row.anchor_expected;
      result.rows.push_back(row);
    }
  }
  return result;
}

Table ThresholdResult::table() const {
  Table t = base_table(spec, {"beta", "n", "r", "grid_used", "oracle_mean", "oracle_stderr", "anchor_expected",
                              "ratio", "mean_error_bound", "all_covered"});
  for (const auto& row : rows) {
    t.add_row({format_number(row.beta), std::to_string(row.n), format_number(row.r),
               std::to_string(row.grid_used), format_number(row.oracle.mean), format_number(row.oracle.std_error),
               format_number(row.anchor_expected), format_number(row.ratio), format_number(row.mean_error_bound),
               row.all_covered ? "true" : "false"});
  }
  return t;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("log_log_slope: need >= 2 paired points");
  const auto count = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= count;
  my /= count;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw std::invalid_argument("log_log_slope: x values are all equal");
  return sxy / sxx;
}

Alg1Result run_alg1(const ExperimentSpec& spec) {
  spec.validate();
  if (!(spec.f > 6.0)) throw std::invalid_argument("alg1: f must be > 6");
  Alg1Result result;
  result.spec = spec;
  for (const long n : spec.n_list) {
    const Alg1Params params = alg1_params(n, spec.a);
    const double r = spec.f / (2.0 * n);
    Alg1Row row;
    row.n = n;
    row.subintervals = params.subintervals;
    row.picks = params.picks;
    std::vector<double> costs(static_cast<std::size_t>(spec.trials));
    for (long k = 0; k < spec.trials; ++k) {
      const auto run = alg1_run(sample_deployment(n, deployment_seed(spec.base_seed, k)), params, r,
                                pick_seed(spec.base_seed, k));
      costs[k] = run.outcome.total_cost;
      row.all_covered = row.all_covered && run.outcome.covered;
      if (run.which == Alg1Case::kFallbackAnchors) ++row.case1_count;
    }
    row.cost = summarize(costs);
    const double nd = static_cast<double>(n);
    row.predictor = std::pow(std::log(nd) / nd, spec.a / 2.0) * std::pow(nd, 1.0 - spec.a / 2.0);
    row.ratio = row.cost.mean / row.predictor;
    row.case1_frequency = static_cast<double>(row.case1_count) / static_cast<double>(spec.trials);
    result.rows.push_back(row);
  }
  if (result.rows.size() >= 2) {
    std::vector<double> xs, ys;
    for (const auto& row : result.rows) {
      xs.push_back(row.predictor);
      ys.push_back(row.cost.mean);
    }
    result.fitted_slope = log_log_slope(xs, ys);
  }
  return result;
}

Table Alg1Result::table() const {
  Table t = base_table(spec, {"n", "subintervals", "picks", "mean_cost", "stderr", "predictor", "ratio",
                              "case1_count", "case1_frequency", "all_covered"});
  t.metadata.emplace_back("fitted_slope", format_number(fitted_slope));
  for (const auto& row : rows) {
    t.add_row({std::to_string(row.n), std::to_string(row.subintervals), std::to_string(row.picks),
               format_number(row.cost.mean), format_number(row.cost.std_error), format_number(row.predictor),
               format_number(row.ratio), std::to_string(row.case1_count), format_number(row.case1_frequency),
               row.all_covered ? "true" : "false"});
  }
  return t;
}

Claim1Report run_claim1_exact(long n, double a) {
  const Alg1Params params = alg1_params(n, a);
  Claim1Report rep;
  rep.n = n;
  rep.a = a;
  rep.subintervals = params.subintervals;
  rep.occupancy_threshold = params.occupancy_threshold;
  const long k_count = params.subintervals;
  rep.cutoff = (n + 3 * k_count - 1) / (3 * k_count);

  // P(Bin(n, 1/K) < cutoff) = sum_{j < cutoff} C(n,j) (K-1)^{n-j} / K^n
  BigInt numerator = 0;
  for (long j = 0; j < rep.cutoff && j <= n; ++j) {
    BigInt miss;
    mpz_ui_pow_ui(miss.get_mpz_t(), static_cast<unsigned long>(k_count - 1), static_cast<unsigned long>(n - j));
    numerator += binomial_int(n, j) * miss;
  }
  BigInt denominator;
  mpz_ui_pow_ui(denominator.get_mpz_t(), static_cast<unsigned long>(k_count), static_cast<unsigned long>(n));
  rep.exact_tail = Rational(numerator, denominator);

  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k_count);
  const double log_n = std::log(nd);
  const double mean = nd / kd;
  const double delta = std::sqrt((2.0 + a) * log_n * kd / nd);
  rep.chernoff = std::exp(-delta * delta * mean / 2.0);
  rep.union_bound = Rational(k_count) * rep.exact_tail;
  rep.claim_bound = kd / std::pow(nd, 1.0 + a / 2.0);
  rep.chernoff_threshold = mean - std::sqrt((2.0 + a) * mean * log_n);
  rep.threshold_below_chernoff_point = rep.occupancy_threshold.to_double() <= rep.chernoff_threshold;
  rep.tail_within_chernoff = rep.exact_tail <= Rational::from_double(rep.chernoff);
  rep.union_within_claim = rep.union_bound <= Rational::from_double(rep.claim_bound);
  return rep;
}

Table Claim1Report::table() const {
  Table t;
  t.metadata = {{"experiment", "claim1"}, {"n", std::to_string(n)}, {"a", format_number(a)}};
  t.columns = {"n", "a", "subintervals", "occupancy_threshold", "cutoff", "exact_tail", "chernoff",
               "union_bound", "claim_bound", "chernoff_threshold", "threshold_ok", "tail_ok", "union_ok"};
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  t.add_row({std::to_string(n), format_number(a), std::to_string(subintervals), occupancy_threshold.str(),
             std::to_string(cutoff), format_number(exact_tail.to_double()), format_number(chernoff),
             format_number(union_bound.to_double()), format_number(claim_bound), format_number(chernoff_threshold),
             flag(threshold_below_chernoff_point), flag(tail_within_chernoff), flag(union_within_claim)});
  return t;
}

ScalingReport run_scaling_check(long m, double x, double a, long trials, std::uint64_t base_seed, double tol) {
  if (!(x > 0.0 && x <= 1.0)) throw std::invalid_argument("scaling: interval length must be in (0, 1]");
  if (trials < 2) throw std::invalid_argument("scaling: need at least 2 trials");
  ScalingReport rep;
  rep.m = m;
  rep.x = x;
  rep.a = a;
  std::vector<double> costs(static_cast<std::size_t>(trials));
  const double md = static_cast<double>(m);
  for (long k = 0; k < trials; ++k) {
    const Deployment dep = sample_deployment(m, deployment_seed(base_seed, k));
    long double cost = 0.0L;
    for (long i = 0; i < m; ++i) {
      const double position = x * dep.positions[i];
      const double anchor = x * (2.0 * i + 1.0) / (2.0 * md);
      cost += std::pow(static_cast<long double>(std::fabs(position - anchor)), static_cast<long double>(a));
    }
    costs[k] = static_cast<double>(cost);
  }
  rep.cost = mc_summary(costs);
  rep.target = std::pow(x, a) * expected_anchor_cost(m, a, tol).value;
  rep.pass = std::fabs(rep.cost.mean - rep.target) <= 3.0 * rep.cost.std_error;
  return rep;
}

Table ScalingReport::table() const {
  Table t;
  t.metadata = {{"experiment", "scaling"}, {"m", std::to_string(m)}, {"x", format_number(x)},
                {"a", format_number(a)}, {"trials", std::to_string(cost.trials)}};
  t.columns = {"m", "x", "a", "mc_mean", "mc_stderr", "target", "pass"};
  t.add_row({std::to_string(m), format_number(x), format_number(a), format_number(cost.mean),
             format_number(cost.std_error), format_number(target), pass ? "true" : "false"});
  return t;
}

}  // namespace sensorcov
