#include "sensorcov/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "sensorcov/combinatorics.hpp"

namespace sensorcov {

namespace {

void check_index(long i, long n) {
  if (n < 1) throw std::invalid_argument("sensor count must be >= 1");
  if (i < 1 || i > n) {
    throw std::out_of_range("order statistic index " + std::to_string(i) + " outside 1.." +
                            std::to_string(n));
  }
}

// i C(n,i) * integral_0^1 |t_i - x|^a x^{i-1} (1-x)^{n-i} dx, integrated
// exactly on each side of t_i = c/s with c = 2i-1, s = 2n.
Rational integer_cost_single(long i, long n, long a) {
  const long c = 2 * i - 1;
  const long s = 2 * n;

  // (c - s x)^a
  std::vector<BigInt> kink(static_cast<std::size_t>(a) + 1);
  for (long j = 0; j <= a; ++j) {
    BigInt cp;
    BigInt sp;
    mpz_ui_pow_ui(cp.get_mpz_t(), static_cast<unsigned long>(c), static_cast<unsigned long>(a - j));
    mpz_ui_pow_ui(sp.get_mpz_t(), static_cast<unsigned long>(s), static_cast<unsigned long>(j));
    kink[j] = binomial_int(a, j) * cp * sp;
    if (j % 2 == 1) kink[j] = -kink[j];
  }
  // (1 - x)^{n-i}
  const long tail_deg = n - i;
  std::vector<BigInt> tail(static_cast<std::size_t>(tail_deg) + 1);
  for (long k = 0; k <= tail_deg; ++k) {
    tail[k] = binomial_int(tail_deg, k);
    if (k % 2 == 1) tail[k] = -tail[k];
  }
  // Coefficient of x^{(i-1) + e} in the full integrand.
  std::vector<BigInt> poly(kink.size() + tail.size() - 1, BigInt(0));
  for (std::size_t j = 0; j < kink.size(); ++j) {
    for (std::size_t k = 0; k < tail.size(); ++k) poly[j + k] += kink[j] * tail[k];
  }

  // Antiderivative at 1 and at t = c/s.
  mpq_class at_one = 0;
  mpq_class at_t = 0;
  const mpq_class t = Rational(c, s).raw();
  mpq_class t_pow = pow(Rational(c, s), static_cast<unsigned>(i)).raw();
  for (std::size_t e = 0; e < poly.size(); ++e) {
    const long power = (i - 1) + static_cast<long>(e) + 1;
    mpq_class coeff(poly[e], BigInt(power));
    coeff.canonicalize();
    at_one += coeff;
    at_t += coeff * t_pow;
    t_pow *= t;
  }
  mpq_class bracket = (a % 2 == 0) ? mpq_class(at_one) : mpq_class(2 * at_t - at_one);

  BigInt s_pow;
  mpz_ui_pow_ui(s_pow.get_mpz_t(), static_cast<unsigned long>(s), static_cast<unsigned long>(a));
  const BigInt norm = binomial_int(n, i) * i;
  return Rational(mpq_class(bracket * norm)) / Rational(s_pow);
}

}  // namespace

OrderStatSpec::OrderStatSpec(long i_, long n_) : i(i_), n(n_) { check_index(i_, n_); }

Rational anchor_position(long i, long n) {
  check_index(i, n);
  return Rational(2 * i - 1, 2 * n);
}

Rational orderstat_moment(long i, long n, long j) {
  check_index(i, n);
  if (j < 0) throw std::invalid_argument("moment order must be non-negative");
  return rising_factorial(Rational(i), j) / rising_factorial(Rational(n + 1), j);
}

std::vector<Rational> anchor_costs_even(long n, long a) {
  if (n < 1) throw std::invalid_argument("sensor count must be >= 1");
  if (a < 2 || a % 2 != 0) throw std::invalid_argument("even-a path requires an even a >= 2");

  std::vector<Rational> rising_n1(static_cast<std::size_t>(a) + 1);
  std::vector<Rational> coeff(static_cast<std::size_t>(a) + 1);
  for (long j = 0; j <= a; ++j) {
    rising_n1[j] = rising_factorial(Rational(n + 1), j);
    // C(a,j) (-1)^j n^{j-a}
    Rational c = binomial(a, j) / pow(Rational(n), static_cast<unsigned>(a - j));
    coeff[j] = (j % 2 == 0) ? c : -c;
  }

  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 1; i <= n; ++i) {
    const Rational shifted(2 * i - 1, 2);  // i - 1/2
    Rational sum;
    Rational rising_i(1);
    for (long j = 0; j <= a; ++j) {
      if (j > 0) rising_i *= Rational(i + j - 1);
      sum += coeff[j] * pow(shifted, static_cast<unsigned>(a - j)) * rising_i / rising_n1[j];
    }
    out.push_back(std::move(sum));
  }
  return out;
}

Rational expected_anchor_cost_even(long n, long a) {
  Rational total;
  for (const auto& d : anchor_costs_even(n, a)) total += d;
  return total;
}

std::vector<Rational> anchor_costs_integer(long n, long a) {
  if (n < 1) throw std::invalid_argument("sensor count must be >= 1");
  if (a < 1) throw std::invalid_argument("integer path requires a >= 1");
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 1; i <= n; ++i) out.push_back(integer_cost_single(i, n, a));
  return out;
}

Rational expected_anchor_cost_integer(long n, long a) {
  Rational total;
  for (const auto& d : anchor_costs_integer(n, a)) total += d;
  return total;
}

QuadratureError::QuadratureError(long index, double error_estimate)
    : std::runtime_error("quadrature did not converge for sensor " + std::to_string(index) +
                         " (error estimate " + std::to_string(error_estimate) + ")"),
      index_(index) {}

AnchorCostResult expected_anchor_cost_numeric(long n, double a, double tol) {
  using boost::math::quadrature::gauss_kronrod;
  if (n < 1) throw std::invalid_argument("sensor count must be >= 1");
  if (!(a > 0.0)) throw std::invalid_argument("exponent must be > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");

  constexpr unsigned kMaxDepth = 40;
  AnchorCostResult result;
  result.n = n;
  result.a = a;
  result.per_sensor.reserve(static_cast<std::size_t>(n));

  long double total = 0.0L;
  long double compensation = 0.0L;
  const long double exponent = a;
  const bool singular_kink = a != std::floor(a);
  boost::math::quadrature::tanh_sinh<long double> kink_quadrature;
  const long double log_n_fact = std::lgamma(static_cast<long double>(n) + 1.0L);
  for (long i = 1; i <= n; ++i) {
    const long double left = i - 1;
    const long double right = n - i;
    // log of 1/B(i, n-i+1)
    const long double log_norm = log_n_fact - std::lgamma(left + 1.0L) - std::lgamma(right + 1.0L);
    const long double t = (2.0L * i - 1.0L) / (2.0L * n);
    auto density = [&](long double x) {
      long double log_density = log_norm;
      if (left > 0) log_density += left * std::log(x);
      if (right > 0) log_density += right * std::log1p(-x);
      return std::exp(log_density);
    };
    auto integrand = [&](long double x) { return std::pow(std::fabs(t - x), exponent) * density(x); };

    // Break at the kink and at mean +/- 2^k sigma so no piece can hide the peak.
    const long double mean = static_cast<long double>(i) / (n + 1.0L);
    const long double sigma = std::sqrt(mean * (1.0L - mean) / (n + 2.0L));
    std::vector<long double> cuts{0.0L, 1.0L, t};
    for (long double k = 1.0L; k * sigma < 1.0L; k *= 2.0L) {
      for (const long double x : {mean - k * sigma, mean + k * sigma}) {
        if (x > 0.0L && x < 1.0L) cuts.push_back(x);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // Each piece gets an equal share of the absolute budget. A single
    // 15-point pass settles most pieces; the rest refine adaptively with the
    // relative tolerance that meets the share.
    const long double share = static_cast<long double>(tol) / static_cast<long double>(cuts.size() - 1);
    long double value = 0.0L;
    long double error = 0.0L;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
      const long double lo = cuts[p];
      const long double hi = cuts[p + 1];
      long double piece_error = 0.0L;
      long double piece_l1 = 0.0L;
      long double piece = gauss_kronrod<long double, 15>::integrate(integrand, lo, hi, 0, 0.0L, &piece_error,
                                                                    &piece_l1);
      if (piece_error > share) {
        const long double rel = 0.5L * share / std::max(piece_l1, std::numeric_limits<long double>::min());
        if (singular_kink && (lo == t || hi == t)) {
          // |t - x|^a with a fractional is singular at the kink; tanh-sinh
          // absorbs endpoint singularities, and the complement argument
          // gives |t - x| without cancellation.
          const bool kink_left = lo == t;
          auto with_complement = [&](long double x, long double xc) {
            const long double gap = (kink_left ? x < 0.5L * (lo + hi) : x > 0.5L * (lo + hi))
                                        ? std::fabs(xc)
                                        : std::fabs(t - x);
            return std::pow(gap, exponent) * density(x);
          };
          piece = kink_quadrature.integrate(with_complement, lo, hi, std::min(rel, 1e-14L), &piece_error);
        } else {
          piece = gauss_kronrod<long double, 15>::integrate(integrand, lo, hi, kMaxDepth, rel, &piece_error);
        }
      }
      value += piece;
      error += piece_error;
    }
    if (!(error <= tol) || !std::isfinite(static_cast<double>(value))) {
      throw QuadratureError(i, static_cast<double>(error));
    }
    result.per_sensor.push_back(static_cast<double>(value));
    result.max_error = std::max(result.max_error, static_cast<double>(error));

    // Kahan summation in extended precision.
    const long double y = value - compensation;
    const long double next = total + y;
    compensation = (next - total) - y;
    total = next;
  }
  result.total = static_cast<double>(total);
  return result;
}

Rational leading_constant(long a) {
  if (a < 2 || a % 2 != 0) throw std::invalid_argument("leading constant requires an even a >= 2");
  const long half = a / 2;
  BigInt two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(half));
  return Rational(factorial(static_cast<unsigned>(half)), two_pow * (1 + a));
}

bool holder_chain_check(long i, long n, long a) {
  check_index(i, n);
  if (a < 1) throw std::invalid_argument("exponent must be >= 1");
  const long double lower = integer_cost_single(i, n, a).to_long_double();
  const long double upper = integer_cost_single(i, n, a + 1).to_long_double();
  const long double lifted = std::pow(lower, static_cast<long double>(a + 1) / a);
  return lifted <= upper * (1.0L + 1e-12L);
}

}  // namespace sensorcov
