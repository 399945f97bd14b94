// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.
//
// Usage: acceptance [config-dir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "singheat/coefficients.hpp"
#include "singheat/config.hpp"
#include "singheat/energy.hpp"
#include "singheat/error.hpp"
#include "singheat/experiments.hpp"
#include "singheat/runner.hpp"
#include "singheat/solver.hpp"

using namespace singheat;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

fs::path g_configs;

ExperimentConfig load(const std::string& name) {
  std::ifstream in(g_configs / name);
  if (!in) throw Error(ErrorKind::io, "cannot open " + (g_configs / name).string());
  std::ostringstream text;
  text << in.rdbuf();
  auto r = parse_config(text.str());
  if (!r.ok()) throw Error(ErrorKind::config, name + ": " + r.errors.front());
  return *r.config;
}

GridField constant(const Grid& g, double c) {
  return GridField::sample(g, [c](double) { return c; });
}

// Relative L2 error at T = 0.1 of sin(pi x) on periodic [-1, 1], h = 1, CN.
double sine_error(std::size_t n, double dt) {
  const double T = 0.1;
  const Grid g(-1.0, 1.0, n, Boundary::periodic);
  const auto op = DiffusionOperator::build(constant(g, 1.0));
  const GridField u0 = GridField::sample(g, [](double x) { return std::sin(std::numbers::pi * x); });
  const auto traj = solve(u0, op, SolveConfig::uniform(T, dt, Scheme::crank_nicolson, 1));
  const GridField exact = std::exp(-std::numbers::pi * std::numbers::pi * T) * u0;
  return l2_norm(traj.final() - exact) / l2_norm(exact);
}

Outcome exact_solution() {
  const double e1 = sine_error(513, 1e-4);
  const double e2 = sine_error(1025, 5e-5);
  return {e1 <= 1e-4 && e1 / e2 >= 3.5,
          fmt("error %.3g (<= 1e-4), refinement ratio %.3f (>= 3.5)", e1, e1 / e2)};
}

struct RandomRun {
  GridField h;
  Trajectory traj;
};

// The 50 randomized problems shared by criteria 2 and 3.
std::vector<RandomRun> random_runs() {
  std::mt19937_64 rng(20240101);
  std::uniform_real_distribution<double> dts(1e-4, 0.1);
  std::uniform_int_distribution<int> sizes(32, 256);
  std::vector<RandomRun> runs;
  for (int i = 0; i < 50; ++i) {
    const auto boundary = i % 2 ? Boundary::periodic : Boundary::dirichlet_zero;
    const Grid g(0.0, 1.0, static_cast<std::size_t>(sizes(rng)), boundary);
    GridField h = oracle::random_smooth_h(g, rng, 1.0);
    const GridField u0 = oracle::random_field(g, rng);
    const double dt = dts(rng);
    auto traj = solve(u0, DiffusionOperator::build(h),
                      SolveConfig::uniform(40 * dt, dt, Scheme::implicit_euler, 40));
    runs.push_back({std::move(h), std::move(traj)});
  }
  return runs;
}

Outcome contraction(const std::vector<RandomRun>& runs) {
  std::size_t violations = 0;
  double worst = -INFINITY;
  for (const auto& r : runs) {
    const double tol = 1e-12 * l2_norm(r.traj.initial());
    for (std::size_t m = 1; m < r.traj.snapshots.size(); ++m) {
      const double growth = l2_norm(r.traj.snapshots[m].u) - l2_norm(r.traj.snapshots[m - 1].u);
      worst = std::max(worst, growth);
      if (growth > tol) ++violations;
    }
  }
  return {violations == 0, fmt("%zu violations over 50 runs, max step growth %.3g", violations, worst)};
}

double mode_residual(std::size_t n, double dt) {
  const Grid g(0.0, 1.0, n, Boundary::periodic);
  const GridField h = constant(g, 1.0);
  const GridField u0 =
      GridField::sample(g, [](double x) { return std::sin(2 * std::numbers::pi * x); });
  const auto steps = static_cast<std::size_t>(std::llround(0.05 / dt));
  const auto traj = solve(u0, DiffusionOperator::build(h),
                          SolveConfig::uniform(0.05, dt, Scheme::implicit_euler, steps));
  return verify_identities(traj, h).max_residual;
}

Outcome energy_monotone(const std::vector<RandomRun>& runs) {
  std::size_t bad = 0;
  for (const auto& r : runs) {
    const auto report = verify_identities(r.traj, r.h);
    for (std::size_t m = 1; m < report.energy.size(); ++m)
      if (report.energy[m] > report.energy[m - 1] + 1e-12 * report.energy[0]) ++bad;
  }
  const double ratio = mode_residual(65, 1e-3) / mode_residual(129, 5e-4);
  return {bad == 0 && ratio >= 1.8,
          fmt("%zu energy increases over 50 runs, residual refinement ratio %.3f (>= 1.8)", bad, ratio)};
}

Outcome integration_by_parts() {
  std::mt19937_64 rng(20240102);
  double worst = 0.0;
  for (auto boundary : {Boundary::dirichlet_zero, Boundary::periodic}) {
    for (int i = 0; i < 100; ++i) {
      const Grid g(-1.0, 1.0, 64, boundary);
      const auto op = DiffusionOperator::build(oracle::random_smooth_h(g, rng));
      const GridField v = oracle::random_field(g, rng);
      const double diss = op.dissipation(v.values());
      worst = std::max(worst, std::abs(inner(op.apply(v), v) + diss) / diss);
    }
  }
  return {worst <= 1e-12, fmt("max relative defect %.3g (<= 1e-12)", worst)};
}

Outcome moderateness() {
  const std::vector<double> ladder = {0.2, 0.1, 0.05, 0.025};
  const Grid g(-1.0, 1.0, 2561);  // dx = eps_min / 32
  const auto kernel = MollifierKernel::standard_bump();
  const SingularAtom delta{AtomKind::dirac_delta, 0.0, 1.0, 0, 0};
  const SingularAtom delta2{AtomKind::dirac_delta_squared, 0.0, 1.0, 0, 0};
  auto net = [&](const SingularAtom& a) {
    return [&, a](double e) { return regularize_atom(a, ScaledKernel(kernel, e), g); };
  };
  const double d_linf = fit_moderateness(net(delta), ladder, NormKind::linf).fitted_exponent;
  const double d_w1 = fit_moderateness(net(delta), ladder, NormKind::w1inf).fitted_exponent;
  const double d2_linf = fit_moderateness(net(delta2), ladder, NormKind::linf).fitted_exponent;
  const bool ok = std::abs(d_linf - 1.0) <= 0.05 && std::abs(d_w1 - 2.0) <= 0.05 &&
                  std::abs(d2_linf - 2.0) <= 0.05;
  return {ok, fmt("delta Linf %.4f, delta W1inf %.4f, delta^2 Linf %.4f", d_linf, d_w1, d2_linf)};
}

Outcome existence() {
  const auto c = load("sweep_delta.ini");
  const auto r = existence_sweep(make_problem(c), c.epsilons, make_solve_config(c));
  const double bound = r.coefficient_exponent + r.data_exponent + 0.25;
  return {r.solution_exponent <= bound,
          fmt("N %.4f <= N0 %.4f + N1 %.4f + 0.25", r.solution_exponent, r.coefficient_exponent,
              r.data_exponent)};
}

Outcome uniqueness() {
  const auto power = load("uniqueness_powerlaw.ini");
  const auto rp = uniqueness_experiment(make_problem(power), *power.perturbation, power.epsilons,
                                        make_solve_config(power));
  const auto sup = load("uniqueness_superpoly.ini");
  const auto rs = uniqueness_experiment(make_problem(sup), *sup.perturbation, sup.epsilons,
                                        make_solve_config(sup));
  double at_005 = INFINITY;
  for (std::size_t i = 0; i < rs.epsilons.size(); ++i)
    if (rs.epsilons[i] == 0.05) at_005 = rs.errors[i];
  return {rp.fitted_rate >= 2.75 && at_005 <= 1e-8,
          fmt("power-law(k=3) rate %.4f (>= 2.75), superpolynomial error at eps=0.05 %.3g (<= 1e-8)",
              rp.fitted_rate, at_005)};
}

Outcome duhamel() {
  const auto c = load("duhamel.ini");
  const auto problem = make_problem(c);
  const auto cfg = make_solve_config(c);
  const auto r16 = duhamel_check(problem, *c.perturbation, *c.epsilon, cfg, 16);
  const auto r32 = duhamel_check(problem, *c.perturbation, *c.epsilon, cfg, 32);
  const double rel = r16.residual / r16.difference_norm;
  const double gain = r16.residual / r32.residual;
  return {rel <= 0.05 && gain >= 1.8,
          fmt("residual %.3g%% of ||U|| (<= 5%%), halving the spacing gains %.2fx (>= 1.8)",
              100 * rel, gain)};
}

Outcome consistency() {
  const auto c = load("consistency.ini");
  const auto r = consistency_experiment(make_problem(c), c.epsilons, make_solve_config(c));
  const auto& e = r.errors;
  const std::size_t n = e.size();
  const bool decreasing = n >= 3 && e[n - 1] <= e[n - 2] && e[n - 2] <= e[n - 3];
  const auto control = load("consistency_control.ini");
  const auto rc = consistency_experiment(make_problem(control), control.epsilons,
                                         make_solve_config(control));
  double control_max = 0.0;
  for (double v : rc.errors) control_max = std::max(control_max, v);
  return {decreasing && r.fitted_rate >= 0.75 && control_max <= 1e-12,
          fmt("final three non-increasing: %s, rate %.4f (>= 0.75), constant-h max error %.3g",
              decreasing ? "yes" : "no", r.fitted_rate, control_max)};
}

Outcome dense_oracle() {
  std::mt19937_64 rng(20240103);
  std::uniform_real_distribution<double> dts(1e-4, 1e-1);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Grid g(0.0, 1.0, 32, i % 2 ? Boundary::periodic : Boundary::dirichlet_zero);
    const auto op = DiffusionOperator::build(oracle::random_smooth_h(g, rng));
    const GridField u = oracle::random_field(g, rng);
    const double dt = dts(rng);
    const std::vector<double> faces(op.faces().begin(), op.faces().end());
    const auto system =
        oracle::combine(1.0, oracle::identity(g.size()), -dt, oracle::diffusion_matrix(g, faces));
    const auto want = oracle::solve(system, {u.values().begin(), u.values().end()});
    const GridField got = step(u, op, dt, Scheme::implicit_euler);
    worst = std::max(worst, oracle::max_abs_diff(want, got.values()) / oracle::max_abs(want));
  }
  return {worst <= 1e-12, fmt("max relative difference %.3g (<= 1e-12)", worst)};
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "singheat_acceptance_determinism";
  fs::remove_all(root);
  std::vector<fs::path> configs;
  for (const auto& entry : fs::directory_iterator(g_configs))
    if (entry.path().extension() == ".ini") configs.push_back(entry.path());
  std::sort(configs.begin(), configs.end());
  std::size_t compared = 0, differing = 0;
  for (const auto& path : configs) {
    const auto c = load(path.filename().string());
    const std::string stem = path.stem().string();
    for (const char* pass : {"a", "b"}) {
      const int code = run(c, {(root / pass / stem).string(), pass[0] == 'a' ? 1u : 4u});
      if (code == kExitError) return {false, "config " + stem + " failed to run"};
    }
    for (const auto& entry : fs::directory_iterator(root / "a" / stem)) {
      if (entry.path().extension() != ".csv") continue;
      std::ifstream x(entry.path(), std::ios::binary), y(root / "b" / stem / entry.path().filename(),
                                                         std::ios::binary);
      std::ostringstream sx, sy;
      sx << x.rdbuf();
      sy << y.rdbuf();
      ++compared;
      if (sx.str() != sy.str()) ++differing;
    }
  }
  fs::remove_all(root);
  return {compared > 0 && differing == 0,
          fmt("%zu CSV files from %zu configs compared, %zu differ", compared, configs.size(),
              differing)};
}

}  // namespace

int main(int argc, char** argv) {
  g_configs = argc > 1 ? fs::path(argv[1]) : fs::path(SINGHEAT_CONFIG_DIR);

  std::vector<RandomRun> runs;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"exact-solution convergence", exact_solution},
      {"discrete L2 contraction",
       [&] {
         runs = random_runs();
         return contraction(runs);
       }},
      {"energy monotonicity", [&] { return energy_monotone(runs.empty() ? runs = random_runs() : runs); }},
      {"integration-by-parts exactness", integration_by_parts},
      {"moderateness exponents", moderateness},
      {"existence sweep coherence", existence},
      {"uniqueness stability", uniqueness},
      {"Duhamel reconstruction", duhamel},
      {"consistency", consistency},
      {"dense-oracle equivalence", dense_oracle},
      {"determinism", determinism},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
