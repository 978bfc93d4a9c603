#include "sensorcov/combinatorics.hpp"

#include <algorithm>
#include <mutex>
#include <ostream>
#include <stdexcept>

namespace sensorcov {

BigInt binomial_int(long n, long k) {
  if (n < 0) throw std::invalid_argument("binomial: n must be non-negative");
  if (k < 0 || k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Rational binomial(long n, long k) { return Rational(binomial_int(n, k)); }

Rational rising_factorial(const Rational& x, long k) {
  if (k < 0) throw std::invalid_argument("rising_factorial: k must be non-negative");
  Rational out(1);
  for (long j = 0; j < k; ++j) out *= x + Rational(j);
  return out;
}

Rational falling_factorial(const Rational& x, long k) {
  if (k < 0) throw std::invalid_argument("falling_factorial: k must be non-negative");
  Rational out(1);
  for (long j = 0; j < k; ++j) out *= x - Rational(j);
  return out;
}

CombTable::CombTable(int max_m) : max_m_(max_m) {
  if (max_m < 0) throw std::invalid_argument("CombTable: negative bound");
  const auto rows = static_cast<std::size_t>(max_m) + 1;
  s1_.assign(rows, {});
  s2_.assign(rows, {});
  e2_.assign(rows, {});
  fact_.assign(rows, BigInt(1));
  for (int m = 0; m <= max_m; ++m) {
    s1_[m].assign(m + 1, BigInt(0));
    s2_[m].assign(m + 1, BigInt(0));
    e2_[m].assign(m + 1, BigInt(0));
    if (m > 0) fact_[m] = fact_[m - 1] * m;
  }
  s1_[0][0] = s2_[0][0] = e2_[0][0] = 1;
  for (int m = 1; m <= max_m; ++m) {
    for (int k = 0; k <= m; ++k) {
      s1_[m][k] = at(s1_, m - 1, k - 1) + BigInt(m - 1) * at(s1_, m - 1, k);
      s2_[m][k] = BigInt(k) * at(s2_, m - 1, k) + at(s2_, m - 1, k - 1);
      e2_[m][k] = BigInt(k + 1) * at(e2_, m - 1, k) + BigInt(2 * m - 1 - k) * at(e2_, m - 1, k - 1);
    }
  }
}

const BigInt& CombTable::at(const Triangle& t, int m, int k) {
  static const BigInt zero(0);
  if (m < 0 || k < 0 || m >= static_cast<int>(t.size()) || k > m) return zero;
  return t[m][k];
}

namespace {
void check_row(int m, int max_m) {
  if (m > max_m) throw std::out_of_range("CombTable: row beyond table bound");
}
}  // namespace

const BigInt& CombTable::stirling1_unsigned(int m, int k) const {
  check_row(m, max_m_);
  return at(s1_, m, k);
}

const BigInt& CombTable::stirling2(int m, int k) const {
  check_row(m, max_m_);
  return at(s2_, m, k);
}

const BigInt& CombTable::eulerian2(int m, int k) const {
  check_row(m, max_m_);
  return at(e2_, m, k);
}

const BigInt& CombTable::factorial(int m) const {
  check_row(m, max_m_);
  if (m < 0) throw std::out_of_range("CombTable: negative factorial");
  return fact_[m];
}

std::shared_ptr<const CombTable> comb_table(int max_m) {
  static std::mutex mutex;
  static std::shared_ptr<const CombTable> shared;
  std::lock_guard lock(mutex);
  if (!shared || shared->max_m() < max_m) {
    const int previous = shared ? shared->max_m() : 0;
    shared = std::make_shared<const CombTable>(std::max({max_m, 2 * previous, 32}));
  }
  return shared;
}

BigInt stirling1_unsigned(int m, int k) {
  if (m < 0) return 0;
  return comb_table(m)->stirling1_unsigned(m, k);
}

BigInt stirling2(int m, int k) {
  if (m < 0) return 0;
  return comb_table(m)->stirling2(m, k);
}

BigInt eulerian2(int m, int k) {
  if (m < 0) return 0;
  return comb_table(m)->eulerian2(m, k);
}

Rational beta_exact(long c, long d) {
  if (c < 1 || d < 1) throw std::invalid_argument("beta_exact: parameters must be >= 1");
  const auto u = [](long v) { return static_cast<unsigned>(v); };
  return Rational(factorial(u(c - 1)) * factorial(u(d - 1)), factorial(u(c + d - 1)));
}

Rational finite_difference_power(long a, long m) {
  if (a < 0 || m < 0) throw std::invalid_argument("finite_difference_power: negative argument");
  BigInt sum = 0;
  for (long j = 0; j <= a; ++j) {
    BigInt power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(j), static_cast<unsigned long>(m));
    const BigInt term = binomial_int(a, j) * power;
    if (j % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return Rational(sum);
}

std::size_t IdentityReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.pass ? 0 : 1;
  return n;
}

void IdentityReport::write_csv(std::ostream& os) const {
  os << "identity_id, instance, lhs, rhs, pass\n";
  for (const auto& c : checks) {
    os << c.identity_id << ", " << c.instance << ", " << c.lhs << ", " << c.rhs << ", "
       << (c.pass ? "true" : "false") << '\n';
  }
}

namespace {

std::string instance(std::initializer_list<std::pair<const char*, long>> fields) {
  std::string out;
  for (const auto& [name, value] : fields) {
    if (!out.empty()) out += ';';
    out += name;
    out += '=';
    out += std::to_string(value);
  }
  return out;
}

Rational sign_power(long e) { return Rational(e % 2 == 0 ? 1 : -1); }

}  // namespace

IdentityReport verify_identities(int max_m, int max_d) {
  if (max_m < 0 || max_d < 0) throw std::invalid_argument("verify_identities: negative bound");
  if (max_m > 20) throw std::invalid_argument("verify_identities: max_m must be <= 20");

  const auto table = comb_table(std::max(max_m, max_d) + 1);
  IdentityReport report;
  auto add = [&](const char* id, std::string inst, Rational lhs, Rational rhs) {
    const bool ok = lhs == rhs;
    report.checks.push_back({id, std::move(inst), std::move(lhs), std::move(rhs), ok});
  };

  // x^m = sum_l {m l} x^(falling l)
  for (int m = 0; m <= max_m; ++m) {
    for (long x = -max_m; x <= max_m; ++x) {
      Rational rhs;
      for (int l = 0; l <= m; ++l) rhs += Rational(table->stirling2(m, l)) * falling_factorial(x, l);
      add("stirling2_power_expansion", instance({{"m", m}, {"x", x}}), pow(Rational(x), m), rhs);
    }
  }

  // x^(falling m) = sum_l [m l] (-1)^(m-l) x^l
  for (int m = 0; m <= max_m; ++m) {
    for (long x = -max_m; x <= max_m; ++x) {
      Rational rhs;
      for (int l = 0; l <= m; ++l) {
        rhs += Rational(table->stirling1_unsigned(m, l)) * sign_power(m - l) * pow(Rational(x), l);
      }
      add("stirling1_falling_expansion", instance({{"m", m}, {"x", x}}), falling_factorial(x, m), rhs);
    }
  }

  // sum_l <<m l>> = (2m)!/(m! 2^m)
  for (int m = 0; m <= max_m; ++m) {
    BigInt lhs = 0;
    for (int l = 0; l <= m; ++l) lhs += table->eulerian2(m, l);
    BigInt two_m;
    mpz_ui_pow_ui(two_m.get_mpz_t(), 2, static_cast<unsigned long>(m));
    add("eulerian2_row_sum", instance({{"m", m}}), Rational(lhs),
        Rational(factorial(2 * m), factorial(m) * two_m));
  }

  // {m, m-b} = sum_l <<b l>> C(m+b-1-l, 2b)
  for (int m = 1; m <= max_m; ++m) {
    for (int b = 0; b <= m; ++b) {
      Rational rhs;
      for (int l = 0; l <= b; ++l) {
        rhs += Rational(BigInt(table->eulerian2(b, l) * binomial_int(m + b - 1 - l, 2 * b)));
      }
      add("stirling2_eulerian2", instance({{"m", m}, {"b", b}}), Rational(table->stirling2(m, m - b)), rhs);
    }
  }

  // [m, m-b] = sum_l <<b l>> C(m+l, 2b)
  for (int m = 0; m <= max_m; ++m) {
    for (int b = 0; b <= m; ++b) {
      Rational rhs;
      for (int l = 0; l <= b; ++l) rhs += Rational(BigInt(table->eulerian2(b, l) * binomial_int(m + l, 2 * b)));
      add("stirling1_eulerian2", instance({{"m", m}, {"b", b}}),
          Rational(table->stirling1_unsigned(m, m - b)), rhs);
    }
  }

  // sum_{l=0..d} C(d,l) (-1)^l / (d+1+l) = d! d! / (2d+1)!
  for (int d = 0; d <= max_d; ++d) {
    Rational lhs;
    for (int l = 0; l <= d; ++l) lhs += binomial(d, l) * sign_power(l) / Rational(d + 1 + l);
    add("alternating_reciprocal_sum", instance({{"d", d}}), lhs,
        Rational(factorial(d) * factorial(d), factorial(2 * d + 1)));
  }

  // sum_{i=1..n} (i-1)^(falling d) i^(rising f) = (n-1)^(falling d) n^(rising f+1) / (f+d+1)
  for (int d = 0; d <= max_d; ++d) {
    for (int f = 0; f <= max_d; ++f) {
      for (long n = 1; n <= std::max(max_m, 1); ++n) {
        Rational lhs;
        for (long i = 1; i <= n; ++i) lhs += falling_factorial(i - 1, d) * rising_factorial(i, f);
        const Rational rhs =
            falling_factorial(n - 1, d) * rising_factorial(n, f + 1) / Rational(f + d + 1);
        add("telescoping_sum", instance({{"d", d}, {"f", f}, {"n", n}}), lhs, rhs);
      }
    }
  }

  // B(c,d)^{-1} = C(c+d-1, c) c
  for (int c = 1; c <= std::max(max_m, 1); ++c) {
    for (int d = 1; d <= std::max(max_d, 1); ++d) {
      add("beta_inverse", instance({{"c", c}, {"d", d}}), Rational(1) / beta_exact(c, d),
          binomial(c + d - 1, c) * Rational(c));
    }
  }

  // sum_j C(a,j)(-1)^j j^m = 0 for m < a, (-1)^a a! for m = a
  for (int a = 0; a <= max_d; ++a) {
    for (int m = 0; m <= a; ++m) {
      const Rational expected = m < a ? Rational(0) : sign_power(a) * Rational(factorial(a));
      add("finite_difference", instance({{"a", a}, {"m", m}}), finite_difference_power(a, m), expected);
    }
  }

  return report;
}

}  // namespace sensorcov
