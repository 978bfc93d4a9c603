#include "sensorcov/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

namespace sensorcov {

namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double kahan_sum_powers(std::span<const double> values, double a) {
  long double total = 0.0L;
  long double comp = 0.0L;
  for (const double v : values) {
    const long double y = std::pow(static_cast<long double>(v), static_cast<long double>(a)) - comp;
    const long double next = total + y;
    comp = (next - total) - y;
    total = next;
  }
  return static_cast<double>(total);
}

StrategyOutcome make_outcome(std::vector<double> initial, std::vector<double> final_positions,
                             double a, double r) {
  StrategyOutcome out;
  out.displacements.resize(initial.size());
  for (std::size_t i = 0; i < initial.size(); ++i) {
    out.displacements[i] = std::fabs(initial[i] - final_positions[i]);
  }
  out.total_cost = kahan_sum_powers(out.displacements, a);
  out.radius = r;
  std::vector<double> sorted = final_positions;
  std::sort(sorted.begin(), sorted.end());
  out.covered = is_covered(sorted, r);
  out.initial_positions = std::move(initial);
  out.final_positions = std::move(final_positions);
  return out;
}

void require_sorted(std::span<const double> xs, const char* what) {
  if (!std::is_sorted(xs.begin(), xs.end())) {
    throw std::invalid_argument(std::string(what) + ": positions must be sorted");
  }
}

}  // namespace

CoverageParams::CoverageParams(double radius, double exponent) : r(radius), a(exponent) {
  if (!(r > 0.0)) throw std::invalid_argument("sensing radius must be > 0");
  if (!(a > 0.0)) throw std::invalid_argument("cost exponent must be > 0");
}

SensorCountTooSmall::SensorCountTooSmall(long n, long min_n)
    : std::invalid_argument("alg1 needs n >= " + std::to_string(min_n) + ", got " +
                            std::to_string(n)),
      min_n_(min_n) {}

Deployment sample_deployment(long n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_deployment: n must be >= 1");
  std::mt19937_64 rng(seed);
  Deployment dep;
  dep.seed = seed;
  dep.positions.resize(static_cast<std::size_t>(n));
  for (auto& x : dep.positions) x = unit_uniform(rng);
  std::sort(dep.positions.begin(), dep.positions.end());
  return dep;
}

bool is_covered(std::span<const double> positions, double r, double slack) {
  require_sorted(positions, "is_covered");
  if (positions.empty()) return false;
  if (positions.front() > r + slack) return false;
  if (1.0 - positions.back() > r + slack) return false;
  for (std::size_t k = 0; k + 1 < positions.size(); ++k) {
    if (positions[k + 1] - positions[k] > 2.0 * r + slack) return false;
  }
  return true;
}

double displacement_cost(std::span<const double> initial, std::span<const double> final_positions,
                         double a) {
  if (initial.size() != final_positions.size()) {
    throw std::invalid_argument("displacement_cost: length mismatch");
  }
  require_sorted(initial, "displacement_cost");
  require_sorted(final_positions, "displacement_cost");
  std::vector<double> d(initial.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::fabs(initial[i] - final_positions[i]);
  return kahan_sum_powers(d, a);
}

StrategyOutcome anchor_strategy(const Deployment& dep, double a) {
  const auto n = static_cast<double>(dep.size());
  std::vector<double> target(dep.size());
  for (std::size_t i = 0; i < target.size(); ++i) target[i] = (2.0 * i + 1.0) / (2.0 * n);
  return make_outcome(dep.positions, std::move(target), a, 1.0 / (2.0 * n));
}

StrategyOutcome stretched_anchor_strategy(const Deployment& dep, double a, double fn_value) {
  if (!(fn_value > 0.0)) throw std::invalid_argument("stretched_anchor_strategy: f(n) must be > 0");
  const auto n = static_cast<double>(dep.size());
  const double spacing = 1.0 / n + fn_value;
  const double first = 1.0 / (2.0 * n) + fn_value / 2.0;
  std::vector<double> target(dep.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    target[i] = std::min(static_cast<double>(i) * spacing + first, 1.0);
  }
  return make_outcome(dep.positions, std::move(target), a, first);
}

double alg1_root(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("alg1_root: a must be > 0");
  const double p = 9.0 * (2.0 + a) / 4.0;
  auto h = [p](double x) { return x - 3.0 * p * std::log(x); };
  double lo = 3.0 * p;
  double hi = 1e8;
  if (!(h(lo) < 0.0 && h(hi) > 0.0)) throw std::logic_error("alg1_root: root not bracketed");
  while (hi - lo > 1e-9 * std::max(1.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Alg1Params alg1_params(long n, double a) {
  Alg1Params params;
  params.a = a;
  params.p = 9.0 * (2.0 + a) / 4.0;
  params.q = 3.0 * (2.0 + a) / 4.0;
  params.x0 = alg1_root(a);
  params.min_n = static_cast<long>(std::ceil(params.x0));
  if (n < params.min_n) throw SensorCountTooSmall(n, params.min_n);
  params.n = n;
  const double log_n = std::log(static_cast<double>(n));
  params.subintervals = static_cast<long>(std::floor(n / (params.p * log_n)));
  params.picks = static_cast<long>(std::floor(params.q * log_n));
  if (params.subintervals < 1) throw std::logic_error("alg1_params: no subintervals");
  params.occupancy_threshold = Rational(n, 3 * params.subintervals);
  if (Rational(params.picks) > params.occupancy_threshold) {
    throw std::logic_error("alg1_params: picks exceed occupancy threshold");
  }
  return params;
}

Alg1Outcome alg1_run(const Deployment& dep, const Alg1Params& params, double r,
                     std::uint64_t pick_seed) {
  const long n = static_cast<long>(dep.size());
  if (n < params.min_n) throw SensorCountTooSmall(n, params.min_n);
  if (n != params.n) throw std::invalid_argument("alg1_run: parameters were derived for another n");
  const double f = 2.0 * static_cast<double>(n) * r;
  if (!(f > 6.0)) throw std::invalid_argument("alg1_run: radius must be f/(2n) with f > 6");

  const long k_count = params.subintervals;
  const long picks = params.picks;
  const double width = 1.0 / static_cast<double>(k_count);

  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(k_count));
  for (std::size_t idx = 0; idx < dep.positions.size(); ++idx) {
    const auto k = std::min(static_cast<long>(std::floor(dep.positions[idx] * k_count)), k_count - 1);
    members[static_cast<std::size_t>(k)].push_back(idx);
  }

  // Strict "fewer than n/(3K)" compared exactly: count * 3K < n.
  const bool sparse = std::any_of(members.begin(), members.end(), [&](const auto& bucket) {
    return static_cast<long>(bucket.size()) * 3 * k_count < n;
  });

  Alg1Outcome result;
  if (sparse) {
    result.outcome = anchor_strategy(dep, params.a);
    result.outcome.radius = r;
    result.outcome.covered = is_covered(result.outcome.final_positions, r);
    result.which = Alg1Case::kFallbackAnchors;
    return result;
  }

  if (static_cast<double>(picks) * 2.0 * r < width) {
    throw std::logic_error("alg1_run: chosen sensors cannot cover a subinterval");
  }

  std::mt19937_64 rng(pick_seed);
  std::vector<double> target = dep.positions;
  std::vector<std::size_t> chosen;
  for (long k = 0; k < k_count; ++k) {
    const auto& bucket = members[static_cast<std::size_t>(k)];
    chosen.clear();
    std::sample(bucket.begin(), bucket.end(), std::back_inserter(chosen), picks, rng);
    // std::sample keeps relative order, so chosen sensors pair with anchors in order.
    const double start = static_cast<double>(k) / static_cast<double>(k_count);
    for (std::size_t j = 0; j < chosen.size(); ++j) {
      target[chosen[j]] = start + (static_cast<double>(j) + 0.5) * width / static_cast<double>(picks);
    }
  }
  result.outcome = make_outcome(dep.positions, std::move(target), params.a, r);
  result.which = Alg1Case::kLocalAnchors;
  return result;
}

void write_deployment_csv(std::ostream& os, const Deployment& dep) {
  os << "# seed=" << dep.seed << '\n' << "index,position\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < dep.positions.size(); ++i) os << i << ',' << dep.positions[i] << '\n';
}

Deployment read_deployment_csv(std::istream& is) {
  Deployment dep;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.rfind("# seed=", 0) == 0) dep.seed = std::stoull(line.substr(7));
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("deployment CSV: malformed row");
    dep.positions.push_back(std::stod(line.substr(comma + 1)));
  }
  if (!std::is_sorted(dep.positions.begin(), dep.positions.end())) {
    throw std::runtime_error("deployment CSV: positions not sorted");
  }
  return dep;
}

void write_outcome_csv(std::ostream& os, const StrategyOutcome& outcome) {
  os << "# radius=" << std::setprecision(17) << outcome.radius << '\n'
     << "# total_cost=" << outcome.total_cost << '\n'
     << "# covered=" << (outcome.covered ? "true" : "false") << '\n'
     << "index,initial,final,displacement\n";
  for (std::size_t i = 0; i < outcome.final_positions.size(); ++i) {
    os << i << ',' << outcome.initial_positions[i] << ',' << outcome.final_positions[i] << ','
       << outcome.displacements[i] << '\n';
  }
}

}  // namespace sensorcov
