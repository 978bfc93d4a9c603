#include "sensorcov/mincost.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sensorcov {

namespace {

// Fraction of a cell tolerated when rounding the constraints inward, so that
// radii equal to an exact multiple of the step are not lost to rounding.
constexpr double kCellTolerance = 1e-9;

struct CellLimits {
  long first_max;  // y_1 index bound
  long last_min;   // y_n index bound
  long window;     // max index gap between neighbours
};

CellLimits cell_limits(double r, const GridSpec& grid) {
  const auto cells = static_cast<double>(grid.resolution - 1);
  CellLimits lim{};
  lim.first_max = std::min(static_cast<long>(std::floor(r * cells + kCellTolerance)), grid.resolution - 1);
  lim.last_min = std::max(static_cast<long>(std::ceil((1.0 - r) * cells - kCellTolerance)), 0L);
  lim.window = static_cast<long>(std::floor(2.0 * r * cells + kCellTolerance));
  return lim;
}

void validate(const Deployment& dep, double r, double a, const GridSpec& grid) {
  if (dep.size() == 0) throw std::invalid_argument("oracle: empty deployment");
  if (!(a >= 1.0)) throw std::invalid_argument("oracle: exponent must be >= 1");
  if (static_cast<double>(dep.size()) * 2.0 * r < 1.0) {
    throw std::invalid_argument("oracle: coverage infeasible, n * 2r < 1");
  }
  if (grid.resolution < 2) throw std::invalid_argument("oracle: grid needs at least 2 points");
  if (2.0 * r < grid.step()) throw std::invalid_argument("oracle: grid step exceeds 2r");
}

double term(double x, double y, double a) { return std::pow(std::fabs(x - y), a); }

}  // namespace

GridSpec::GridSpec(long g) : resolution(g) {
  if (g < 2) throw std::invalid_argument("GridSpec: resolution must be >= 2");
}

GridSpec GridSpec::aligned_to(long n) const {
  if (n < 1) throw std::invalid_argument("GridSpec::aligned_to: n must be >= 1");
  const long period = 2 * n;
  const long cells = resolution - 1;
  const long aligned = ((cells + period - 1) / period) * period;
  return GridSpec(aligned + 1);
}

OracleResult min_cost_coverage_dp(const Deployment& dep, double r, double a, const GridSpec& grid) {
  validate(dep, r, a, grid);
  const CellLimits lim = cell_limits(r, grid);
  const long cells = grid.resolution;
  const std::size_t n = dep.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> prev(static_cast<std::size_t>(cells), kInf);
  std::vector<double> cur(static_cast<std::size_t>(cells), kInf);
  std::vector<std::vector<int>> parent(n, std::vector<int>(static_cast<std::size_t>(cells), -1));

  for (long k = 0; k <= lim.first_max; ++k) prev[k] = term(dep.positions[0], grid.point(k), a);

  for (std::size_t i = 1; i < n; ++i) {
    // Sliding-window minimum of prev over [k - window, k].
    std::deque<long> window;
    for (long k = 0; k < cells; ++k) {
      while (!window.empty() && prev[window.back()] >= prev[k]) window.pop_back();
      window.push_back(k);
      while (window.front() < k - lim.window) window.pop_front();
      const double best = prev[window.front()];
      if (best == kInf) {
        cur[k] = kInf;
        continue;
      }
      cur[k] = term(dep.positions[i], grid.point(k), a) + best;
      parent[i][k] = static_cast<int>(window.front());
    }
    std::swap(prev, cur);
  }

  long best_k = -1;
  for (long k = lim.last_min; k < cells; ++k) {
    if (prev[k] < kInf && (best_k < 0 || prev[k] < prev[best_k])) best_k = k;
  }
  if (best_k < 0) throw std::domain_error("oracle: no covering placement on this grid");

  OracleResult out;
  out.cost = prev[best_k];
  out.optimal_positions.resize(n);
  long k = best_k;
  for (std::size_t i = n; i-- > 0;) {
    out.optimal_positions[i] = grid.point(k);
    if (i > 0) k = parent[i][k];
  }
  out.covered = is_covered(out.optimal_positions, r);

  double max_disp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    max_disp = std::max(max_disp, std::fabs(dep.positions[i] - out.optimal_positions[i]));
  }
  const double h = grid.step();
  out.error_bound = static_cast<double>(n) * h * a * std::pow(max_disp + h, a - 1.0);
  return out;
}

BruteForceResult brute_force_small(const Deployment& dep, double r, double a, const GridSpec& grid) {
  if (dep.size() > 4) throw std::invalid_argument("brute_force_small: n must be <= 4");
  if (grid.resolution > 200) throw std::invalid_argument("brute_force_small: G must be <= 200");
  validate(dep, r, a, grid);
  const CellLimits lim = cell_limits(r, grid);
  const std::size_t n = dep.size();

  BruteForceResult best;
  best.cost = std::numeric_limits<double>::infinity();
  std::vector<long> tuple(n);
  std::vector<std::size_t> perm(n);

  auto evaluate = [&] {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
      double cost = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double t = term(dep.positions[i], grid.point(tuple[perm[i]]), a);
        cost = i == 0 ? t : t + cost;
      }
      if (cost < best.cost) {
        best.cost = cost;
        best.assignment = perm;
        best.positions.resize(n);
        for (std::size_t j = 0; j < n; ++j) best.positions[j] = grid.point(tuple[j]);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  };

  // Recursive enumeration of non-decreasing tuples honouring the window.
  auto place = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      if (tuple[n - 1] >= lim.last_min) evaluate();
      return;
    }
    const long lo = i == 0 ? 0 : tuple[i - 1];
    const long hi = i == 0 ? lim.first_max : std::min(tuple[i - 1] + lim.window, grid.resolution - 1);
    const long remaining = static_cast<long>(n - 1 - i);
    for (long k = lo; k <= hi; ++k) {
      if (k + remaining * lim.window < lim.last_min) continue;
      tuple[i] = k;
      self(self, i + 1);
    }
  };
  place(place, 0);

  if (best.assignment.empty()) throw std::domain_error("oracle: no covering placement on this grid");
  return best;
}

}  // namespace sensorcov
