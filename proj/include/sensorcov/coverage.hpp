#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "sensorcov/rational.hpp"

namespace sensorcov {

// Sorted i.i.d. uniform sensor positions on [0, 1).
struct Deployment {
  std::vector<double> positions;
  std::uint64_t seed = 0;

  std::size_t size() const { return positions.size(); }
};

struct CoverageParams {
  double r;
  double a;

  CoverageParams(double radius, double exponent);
};

struct StrategyOutcome {
  std::vector<double> initial_positions;
  std::vector<double> final_positions;  // per sensor, same order as initial
  std::vector<double> displacements;
  double total_cost = 0.0;
  double radius = 0.0;
  bool covered = false;
};

enum class Alg1Case { kFallbackAnchors = 1, kLocalAnchors = 2 };

struct Alg1Params {
  double a = 0.0;
  double p = 0.0;
  double q = 0.0;
  double x0 = 0.0;
  long min_n = 0;
  long n = 0;
  long subintervals = 0;  // K
  long picks = 0;         // m
  Rational occupancy_threshold;  // n / (3K)
};

struct Alg1Outcome {
  StrategyOutcome outcome;
  Alg1Case which = Alg1Case::kLocalAnchors;
};

// Thrown when n is below the smallest size the subinterval algorithm accepts.
class SensorCountTooSmall : public std::invalid_argument {
 public:
  SensorCountTooSmall(long n, long min_n);
  long min_n() const { return min_n_; }

 private:
  long min_n_;
};

// Absolute slack used by is_covered; absorbs rounding in computed anchors.
inline constexpr double kCoverSlack = 1e-12;

Deployment sample_deployment(long n, std::uint64_t seed);

// Positions must be sorted; throws std::invalid_argument otherwise.
bool is_covered(std::span<const double> positions, double r, double slack = kCoverSlack);

// Order-preserving cost sum |x_i - y_i|^a for two sorted lists.
double displacement_cost(std::span<const double> initial, std::span<const double> final_positions,
                         double a);

// i-th smallest sensor to (2i-1)/(2n); coverage evaluated at r = 1/(2n).
StrategyOutcome anchor_strategy(const Deployment& dep, double a);

// i-th smallest sensor to min((i-1)(1/n + f) + 1/(2n) + f/2, 1); coverage
// evaluated at r = 1/(2n) + f/2.
StrategyOutcome stretched_anchor_strategy(const Deployment& dep, double a, double fn_value);

// Larger root of x = 3p ln x with p = 9(2+a)/4.
double alg1_root(double a);

Alg1Params alg1_params(long n, double a);

Alg1Outcome alg1_run(const Deployment& dep, const Alg1Params& params, double r,
                     std::uint64_t pick_seed);

// CSV serialisations: "index,position" and "index,initial,final,displacement".
void write_deployment_csv(std::ostream& os, const Deployment& dep);
Deployment read_deployment_csv(std::istream& is);
void write_outcome_csv(std::ostream& os, const StrategyOutcome& outcome);

}  // namespace sensorcov
