#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sensorcov/rational.hpp"

namespace sensorcov {

// The i-th smallest of n i.i.d. uniform points, distributed Beta(i, n-i+1).
struct OrderStatSpec {
  long i;
  long n;

  OrderStatSpec(long i, long n);
};

// Anchor t_i = (2i-1)/(2n).
Rational anchor_position(long i, long n);

// E[X_i^j] = i^(rising j) / (n+1)^(rising j).
Rational orderstat_moment(long i, long n, long j);

// Exact sum_i E[(X_i - t_i)^a] for even a, from the moment expansion.
Rational expected_anchor_cost_even(long n, long a);
std::vector<Rational> anchor_costs_even(long n, long a);

// Exact sum_i E|X_i - t_i|^a for any integer a >= 1, by integrating the
// Beta density piecewise on [0, t_i] and [t_i, 1].
Rational expected_anchor_cost_integer(long n, long a);
std::vector<Rational> anchor_costs_integer(long n, long a);

struct AnchorCostResult {
  long n = 0;
  double a = 0.0;
  std::vector<double> per_sensor;
  double total = 0.0;
  double max_error = 0.0;  // largest per-sensor quadrature error estimate
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(long index, double error_estimate);
  long index() const { return index_; }

 private:
  long index_;
};

inline constexpr double kDefaultQuadratureTol = 1e-12;

// Per-sensor E|X_i - t_i|^a by adaptive Gauss-Kronrod quadrature, each within
// tol. Throws QuadratureError naming the first sensor that fails to converge.
AnchorCostResult expected_anchor_cost_numeric(long n, double a, double tol = kDefaultQuadratureTol);

// (a/2)! / (2^{a/2} (1+a)), the limit of n^{a/2-1} times the even-a cost.
Rational leading_constant(long a);

// (D_i^(a))^{(a+1)/a} <= D_i^(a+1) within relative slack 1e-12.
bool holder_chain_check(long i, long n, long a);

}  // namespace sensorcov
