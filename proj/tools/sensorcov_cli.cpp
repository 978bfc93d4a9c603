// sensorcov: command-line harness for the sensor displacement experiments.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sensorcov/combinatorics.hpp"
#include "sensorcov/coverage.hpp"
#include "sensorcov/expectation.hpp"
#include "sensorcov/experiments.hpp"
#include "sensorcov/mincost.hpp"
#include "sensorcov/table.hpp"

namespace {

using namespace sensorcov;

struct Options {
  double a = 2.0;
  long n = 10;
  std::vector<long> n_list;
  long trials = 1000;
  std::uint64_t seed = 1;
  double f = 7.0;
  std::vector<std::string> beta_list;
  long grid = kDefaultGridResolution;
  double tol = 1e-10;
  double x = 0.5;
  std::string out;
  std::string svg;
};

void emit(const Table& table, const Options& opt) {
  if (opt.out.empty()) {
    write_csv(std::cout, table);
  } else {
    emit_csv(table, opt.out);
    std::cerr << "wrote " << opt.out << '\n';
  }
}

ExperimentSpec make_spec(const std::string& name, const Options& opt) {
  ExperimentSpec spec;
  spec.name = name;
  spec.a = opt.a;
  spec.n_list = opt.n_list.empty() ? std::vector<long>{opt.n} : opt.n_list;
  spec.trials = opt.trials;
  spec.base_seed = opt.seed;
  spec.f = opt.f;
  for (const auto& b : opt.beta_list) {
    spec.beta.push_back(b == "inf" ? std::numeric_limits<double>::infinity() : std::stod(b));
  }
  spec.grid = opt.grid;
  spec.tol = opt.tol;
  spec.out_path = opt.out;
  return spec;
}

void maybe_svg(const Options& opt, Series series) {
  if (opt.svg.empty()) return;
  emit_svg(series, opt.svg);
  std::cerr << "wrote " << opt.svg << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Displacement costs for covering [0,1] with randomly placed sensors"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--a", opt.a, "cost exponent a > 0");
    sub->add_option("--n", opt.n, "sensor count");
    sub->add_option("--n-list", opt.n_list, "sensor counts")->delimiter(',');
    sub->add_option("--trials", opt.trials, "Monte Carlo trials");
    sub->add_option("--seed", opt.seed, "base seed");
    sub->add_option("--f", opt.f, "radius multiplier, r = f/(2n)");
    sub->add_option("--beta-list", opt.beta_list, "threshold exponents (or inf)")->delimiter(',');
    sub->add_option("--grid", opt.grid, "oracle grid resolution G");
    sub->add_option("--tol", opt.tol, "quadrature tolerance");
    sub->add_option("--out", opt.out, "output CSV path (default stdout)");
    sub->add_option("--svg", opt.svg, "optional SVG chart path");
  };

  auto* identities = app.add_subcommand("identities", "check the combinatorial identities exactly");
  add_common(identities);
  auto* exact = app.add_subcommand("exact", "expected anchor cost S(n) for one (n, a)");
  add_common(exact);
  auto* convergence = app.add_subcommand("convergence", "S(n), Monte Carlo mean and n^{a/2-1} S(n)");
  add_common(convergence);
  auto* threshold = app.add_subcommand("threshold", "oracle minimum cost at r = 1/(2n) + n^-beta/2");
  add_common(threshold);
  auto* alg1 = app.add_subcommand("alg1", "subinterval algorithm cost and case frequencies");
  add_common(alg1);
  auto* claim1 = app.add_subcommand("claim1", "exact occupancy tail against its Chernoff bounds");
  add_common(claim1);
  auto* scaling = app.add_subcommand("scaling", "anchor cost inside an interval of length x");
  add_common(scaling);
  scaling->add_option("--x", opt.x, "interval length in (0, 1]");
  auto* oracle = app.add_subcommand("oracle", "minimum covering displacement for one deployment");
  add_common(oracle);

  CLI11_PARSE(app, argc, argv);

  try {
    if (identities->parsed()) {
      const int bound = static_cast<int>(opt.n);
      const auto report = verify_identities(bound, bound);
      if (opt.out.empty()) {
        report.write_csv(std::cout);
      } else {
        std::ofstream os(opt.out);
        if (!os) throw std::runtime_error("cannot open '" + opt.out + "'");
        report.write_csv(os);
      }
      std::cerr << report.checks.size() << " checks, " << report.failures() << " failures\n";
      return report.failures() == 0 ? 0 : 1;
    }
    if (exact->parsed()) {
      const auto cost = expected_anchor_cost(opt.n, opt.a, opt.tol);
      std::cout << "n=" << opt.n << " a=" << format_number(opt.a) << " method=" << cost.method << '\n';
      if (cost.exact) std::cout << "exact=" << *cost.exact << '\n';
      std::cout << "value=" << format_number(cost.value) << '\n'
                << "normalized=" << format_number(std::pow(opt.n, opt.a / 2.0 - 1.0) * cost.value) << '\n';
      if (opt.a >= 2 && opt.a == std::floor(opt.a) && static_cast<long>(opt.a) % 2 == 0) {
        std::cout << "leading_constant=" << leading_constant(static_cast<long>(opt.a)) << '\n';
      }
      return 0;
    }
    if (convergence->parsed()) {
      const auto result = run_convergence(make_spec("convergence", opt));
      emit(result.table(), opt);
      Series s{"n^{a/2-1} S(n)", "n", "normalized", {}, {}, true, false};
      for (const auto& row : result.rows) {
        s.x.push_back(static_cast<double>(row.n));
        s.y.push_back(row.normalized);
      }
      maybe_svg(opt, s);
      return 0;
    }
    if (threshold->parsed()) {
      auto spec = make_spec("threshold", opt);
      if (spec.beta.empty()) spec.beta = {2.0};
      const auto result = run_threshold(spec);
      emit(result.table(), opt);
      Series s{"oracle / anchor expectation", "n", "ratio", {}, {}, true, false};
      for (const auto& row : result.rows) {
        s.x.push_back(static_cast<double>(row.n));
        s.y.push_back(row.ratio);
      }
      maybe_svg(opt, s);
      return 0;
    }
    if (alg1->parsed()) {
      const auto result = run_alg1(make_spec("alg1", opt));
      emit(result.table(), opt);
      std::cerr << "fitted slope " << format_number(result.fitted_slope) << '\n';
      Series s{"alg1 mean cost", "predictor", "mean cost", {}, {}, true, true};
      for (const auto& row : result.rows) {
        s.x.push_back(row.predictor);
        s.y.push_back(row.cost.mean);
      }
      maybe_svg(opt, s);
      return 0;
    }
    if (claim1->parsed()) {
      const auto rep = run_claim1_exact(opt.n, opt.a);
      emit(rep.table(), opt);
      return rep.tail_within_chernoff && rep.union_within_claim ? 0 : 1;
    }
    if (scaling->parsed()) {
      const auto rep = run_scaling_check(opt.n, opt.x, opt.a, opt.trials, opt.seed, opt.tol);
      emit(rep.table(), opt);
      return rep.pass ? 0 : 1;
    }
    if (oracle->parsed()) {
      const Deployment dep = sample_deployment(opt.n, opt.seed);
      const double r = opt.f / (2.0 * opt.n);
      const GridSpec grid = GridSpec(opt.grid).aligned_to(opt.n);
      const auto res = min_cost_coverage_dp(dep, r, opt.a, grid);
      StrategyOutcome outcome;
      outcome.initial_positions = dep.positions;
      outcome.final_positions = res.optimal_positions;
      for (std::size_t i = 0; i < dep.size(); ++i) {
        outcome.displacements.push_back(std::fabs(dep.positions[i] - res.optimal_positions[i]));
      }
      outcome.total_cost = res.cost;
      outcome.radius = r;
      outcome.covered = res.covered;
      if (opt.out.empty()) {
        write_outcome_csv(std::cout, outcome);
      } else {
        std::ofstream os(opt.out);
        if (!os) throw std::runtime_error("cannot open '" + opt.out + "'");
        write_outcome_csv(os, outcome);
      }
      std::cerr << "grid " << grid.resolution << ", error bound " << format_number(res.error_bound) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
