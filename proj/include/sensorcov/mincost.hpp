#pragma once

#include <cstddef>
#include <vector>

#include "sensorcov/coverage.hpp"

namespace sensorcov {

// Uniform grid k/(G-1), k = 0..G-1.
struct GridSpec {
  long resolution = 2048;

  GridSpec() = default;
  explicit GridSpec(long g);

  double step() const { return 1.0 / static_cast<double>(resolution - 1); }
  double point(long k) const { return static_cast<double>(k) / static_cast<double>(resolution - 1); }

  // Smallest resolution >= this one whose step divides 1/(2n), so every
  // anchor (2i-1)/(2n) is a grid point.
  GridSpec aligned_to(long n) const;
};

inline constexpr long kDefaultGridResolution = 2048;

struct OracleResult {
  std::vector<double> optimal_positions;
  double cost = 0.0;
  bool covered = false;
  double error_bound = 0.0;  // grid discretisation bound on |cost - continuous optimum|
};

// Minimum order-preserving cost over sorted grid placements with
// y_1 <= r, y_n >= 1-r and gaps <= 2r. Constraints are rounded inward.
OracleResult min_cost_coverage_dp(const Deployment& dep, double r, double a, const GridSpec& grid);

struct BruteForceResult {
  double cost = 0.0;
  std::vector<double> positions;
  std::vector<std::size_t> assignment;  // sensor i -> positions[assignment[i]]
};

// Exhaustive search over every feasible sorted grid tuple and every
// assignment of sensors to it. n <= 4 and G <= 200.
BruteForceResult brute_force_small(const Deployment& dep, double r, double a, const GridSpec& grid);

}  // namespace sensorcov
