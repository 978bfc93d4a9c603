#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "sensorcov/rational.hpp"

namespace sensorcov {

// C(n, k) for n >= 0; zero when k is outside [0, n].
BigInt binomial_int(long n, long k);
Rational binomial(long n, long k);

Rational rising_factorial(const Rational& x, long k);
Rational falling_factorial(const Rational& x, long k);

// Immutable triangle of unsigned first-kind Stirling numbers, second-kind
// Stirling numbers, second-order Eulerian numbers and factorials, all for
// rows 0..max_m. Out-of-range indices read as zero.
class CombTable {
 public:
  explicit CombTable(int max_m);

  int max_m() const { return max_m_; }

  const BigInt& stirling1_unsigned(int m, int k) const;
  const BigInt& stirling2(int m, int k) const;
  const BigInt& eulerian2(int m, int k) const;
  const BigInt& factorial(int m) const;

 private:
  using Triangle = std::vector<std::vector<BigInt>>;
  static const BigInt& at(const Triangle& t, int m, int k);

  int max_m_;
  Triangle s1_;
  Triangle s2_;
  Triangle e2_;
  std::vector<BigInt> fact_;
};

// Shared table covering at least rows 0..max_m. A larger request replaces the
// shared instance with a new frozen table; handed-out tables never change.
std::shared_ptr<const CombTable> comb_table(int max_m);

BigInt stirling1_unsigned(int m, int k);
BigInt stirling2(int m, int k);
BigInt eulerian2(int m, int k);

// B(c, d) = (c-1)!(d-1)!/(c+d-1)! for positive integers.
Rational beta_exact(long c, long d);

// sum_{j=0..a} C(a,j) (-1)^j j^m
Rational finite_difference_power(long a, long m);

struct IdentityCheck {
  std::string identity_id;
  std::string instance;
  Rational lhs;
  Rational rhs;
  bool pass = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;

  std::size_t failures() const;
  // "identity_id, instance, lhs, rhs, pass" CSV.
  void write_csv(std::ostream& os) const;
};

// Checks every combinatorial identity used by the anchor-cost analysis over
// the index ranges 0..max_m and 0..max_d. max_m is capped at 20.
IdentityReport verify_identities(int max_m, int max_d);

}  // namespace sensorcov
