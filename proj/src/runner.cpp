#include "singheat/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "singheat/coefficients.hpp"
#include "singheat/energy.hpp"
#include "singheat/error.hpp"
#include "singheat/experiments.hpp"

namespace singheat {

namespace {

namespace fs = std::filesystem;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Collects every file in memory; nothing touches disk until flush().
class Outputs {
 public:
  std::ostringstream& file(const std::string& name) { return files_[name]; }

  void flush(const fs::path& dir) const {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::io, "cannot create " + dir.string() + ": " + ec.message());
    for (const auto& [name, text] : files_) {
      std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
      out << text.str();
      if (!out) throw Error(ErrorKind::io, "cannot write " + (dir / name).string());
    }
  }

 private:
  std::map<std::string, std::ostringstream> files_;
};

std::string trajectory_name(const Trajectory& traj) {
  if (!traj.epsilon) return "trajectory_classical.csv";
  char buf[64];
  std::snprintf(buf, sizeof buf, "trajectory_eps_%.6g.csv", *traj.epsilon);
  return buf;
}

void write_trajectory(Outputs& out, const Trajectory& traj) {
  auto& s = out.file(trajectory_name(traj));
  s << "t,x,u\n";
  for (const auto& snap : traj.snapshots)
    for (std::size_t i = 0; i < snap.u.size(); ++i)
      s << num(snap.time) << ',' << num(traj.grid.x(i)) << ',' << num(snap.u[i]) << '\n';
}

void write_energy(Outputs& out, const EnergyReport& e) {
  auto& s = out.file("energy.csv");
  s << "t,E,l2,weighted_h1,residual\n";
  for (std::size_t m = 0; m < e.times.size(); ++m)
    s << num(e.times[m]) << ',' << num(e.energy[m]) << ',' << num(e.l2[m]) << ','
      << num(e.weighted_h1[m]) << ',' << num(e.residual[m]) << '\n';
}

void write_bounds(std::ostream& s, const std::string& label, const EnergyReport& e) {
  for (const auto& b : e.bound_checks) {
    char line[256];
    std::snprintf(line, sizeof line, "  %-10s %-18s %12.6g %12.6g %10.4g %8.3g %-8s %s\n",
                  label.c_str(), b.name.c_str(), b.lhs_max, b.rhs, b.ratio, b.envelope,
                  b.monotone ? "yes" : (b.monotone_required ? "NO" : "no"),
                  b.satisfied ? "ok" : "VIOLATED");
    s << line;
  }
}

void write_bound_header(std::ostream& s) {
  s << "[bounds]\n";
  char line[256];
  std::snprintf(line, sizeof line, "  %-10s %-18s %12s %12s %10s %8s %-8s %s\n", "eps", "estimate",
                "lhs_max", "rhs", "ratio", "envelope", "monotone", "status");
  s << line;
}

void write_checks(std::ostream& s, const std::vector<Check>& checks) {
  s << "[checks]\n";
  for (const auto& c : checks) {
    s << (c.passed ? "PASS " : c.advisory ? "WARN " : "FAIL ") << c.name;
    if (!c.detail.empty()) s << " (" << c.detail << ')';
    s << '\n';
  }
}

struct Solved {
  Trajectory traj;
  EnergyReport energy;
  GridField h;
};

Solved solve_regularized(const Problem& problem, std::optional<double> epsilon,
                         const SolveConfig& cfg) {
  GridField h(problem.grid), u0(problem.grid);
  if (epsilon) {
    RegularizedProblem reg = regularize(problem, *epsilon);
    h = std::move(reg.h);
    u0 = std::move(reg.u0);
  } else {
    if (problem.coefficient.has_atoms())
      throw Error(ErrorKind::inadmissible_input, "singular coefficient needs an epsilon");
    h = GridField::sample(problem.grid, problem.coefficient.background());
    u0 = problem.initial.sample(problem.grid);
  }
  const DiffusionOperator op = DiffusionOperator::build(h, problem.face_rule);
  Trajectory traj = solve(u0, op, cfg, epsilon);
  EnergyReport energy = verify_identities(traj, h, problem.face_rule);
  return {std::move(traj), std::move(energy), std::move(h)};
}

std::vector<Check> energy_checks(const EnergyReport& e) {
  bool contraction = true, envelopes = true;
  std::string detail;
  for (const auto& b : e.bound_checks) {
    if (b.name == "energy_estimate_3") contraction = contraction && b.satisfied;
    else envelopes = envelopes && b.satisfied;
    if (!b.satisfied) detail += (detail.empty() ? "" : " ") + b.name;
  }
  return {
      {"energy E(t) <= E(0)", e.energy_monotone,
       "max jump " + short_num(e.max_energy_jump) + ", max residual " +
           short_num(e.max_residual)},
      {"energy_estimate_3: ||u(t)|| <= ||u0||", contraction, detail},
      {"energy_estimate envelopes", envelopes, detail},
  };
}

void write_header(std::ostream& s, const ExperimentConfig& c) {
  s << "command = " << to_string(c.command) << '\n';
  s << "scheme = " << to_string(c.scheme) << '\n';
  s << "grid = [" << short_num(c.a) << ", " << short_num(c.b) << "], n = " << c.n << ", "
    << (c.boundary == Boundary::periodic ? "periodic" : "dirichlet") << '\n';
  s << "time = T " << short_num(c.final_time) << ", dt " << short_num(c.dt) << '\n';
}

std::vector<Check> run_solve(const ExperimentConfig& c, const Problem& problem,
                             const SolveConfig& cfg, Outputs& out) {
  const Solved r = solve_regularized(problem, c.epsilon, cfg);
  write_trajectory(out, r.traj);
  write_energy(out, r.energy);
  auto& sweep = out.file("sweep.csv");
  sweep << "epsilon,h2_sup,coeff_w1inf,max_energy_residual\n";
  double h2_sup = 0.0;
  for (const auto& snap : r.traj.snapshots) h2_sup = std::max(h2_sup, sobolev_norms(snap.u).h2);
  sweep << (c.epsilon ? num(*c.epsilon) : std::string("0")) << ',' << num(h2_sup) << ','
        << num(w1inf_norm(r.h)) << ',' << num(r.energy.max_residual) << '\n';

  auto& s = out.file("summary.txt");
  s << "epsilon = " << (c.epsilon ? short_num(*c.epsilon) : std::string("none (classical)")) << '\n';
  s << "max energy residual = " << short_num(r.energy.max_residual) << '\n';
  write_bound_header(s);
  write_bounds(s, c.epsilon ? short_num(*c.epsilon) : "classical", r.energy);
  return energy_checks(r.energy);
}

std::vector<Check> run_diagnose(const ExperimentConfig& c, const Problem& problem,
                                const SolveConfig& cfg, Outputs& out) {
  const Solved r = solve_regularized(problem, std::nullopt, cfg);
  write_trajectory(out, r.traj);
  write_energy(out, r.energy);

  const double decay = std::exp(-std::numbers::pi * std::numbers::pi * c.final_time);
  const GridField exact = GridField::sample(
      problem.grid, [&](double x) { return decay * std::sin(std::numbers::pi * x); });
  const double rel = l2_norm(r.traj.final() - exact) / l2_norm(exact);

  auto& sweep = out.file("sweep.csv");
  sweep << "epsilon,h2_sup,coeff_w1inf,relative_error\n";
  sweep << "0," << num(sobolev_norms(r.traj.initial()).h2) << ',' << num(w1inf_norm(r.h)) << ','
        << num(rel) << '\n';

  auto& s = out.file("summary.txt");
  s << "relative L2 error vs exact = " << short_num(rel) << '\n';
  s << "max energy residual = " << short_num(r.energy.max_residual) << '\n';
  write_bound_header(s);
  write_bounds(s, "classical", r.energy);

  auto checks = energy_checks(r.energy);
  checks.insert(checks.begin(), Check{"exact Fourier-mode solution: relative L2 error <= 1e-4",
                                      rel <= 1e-4, "error " + short_num(rel)});
  return checks;
}

std::vector<Check> run_sweep(const ExperimentConfig& c, const Problem& problem,
                             const SolveConfig& cfg, const ExperimentOptions& opts, Outputs& out) {
  const SweepReport rep = existence_sweep(problem, c.epsilons, cfg, opts);
  for (const auto& traj : rep.trajectories) write_trajectory(out, traj);
  std::size_t finest = 0;
  for (std::size_t i = 1; i < rep.epsilons.size(); ++i)
    if (rep.epsilons[i] < rep.epsilons[finest]) finest = i;
  write_energy(out, rep.per_eps[finest].energy);

  auto& sweep = out.file("sweep.csv");
  sweep << "epsilon,h2_sup,coeff_w1inf,coeff_linf,coeff_min,data_h2,max_energy_residual\n";
  for (const auto& r : rep.per_eps)
    sweep << num(r.epsilon) << ',' << num(r.solution_h2_sup) << ',' << num(r.coeff_w1inf) << ','
          << num(r.coeff_linf) << ',' << num(r.coeff_min) << ',' << num(r.data_h2) << ','
          << num(r.energy.max_residual) << '\n';

  auto& s = out.file("summary.txt");
  s << "inputs_digest = " << hex(rep.inputs_digest) << '\n';
  s << "[exponents]" << (rep.dropped_largest ? " (largest eps dropped from fits)" : "") << '\n';
  s << "N0 coefficient W1inf exponent = " << short_num(rep.coefficient_exponent) << '\n';
  s << "N1 data H2 exponent = " << short_num(rep.data_exponent) << '\n';
  s << "N solution H2 snapshot-sup exponent = " << short_num(rep.solution_exponent) << '\n';
  write_bound_header(s);
  for (const auto& r : rep.per_eps) write_bounds(s, short_num(r.epsilon), r.energy);
  return rep.checks;
}

std::vector<Check> run_convergence(const ExperimentConfig& c, const Problem& problem,
                                   const SolveConfig& cfg, const ExperimentOptions& opts,
                                   Outputs& out) {
  const bool unique = c.command == Command::uniqueness;
  const ConvergenceReport rep =
      unique ? uniqueness_experiment(problem, *c.perturbation, c.epsilons, cfg, opts)
             : consistency_experiment(problem, c.epsilons, cfg, {c.fine_reference}, opts);

  // Representative trajectory and energy record: the finest eps.
  double finest = c.epsilons.front();
  for (double e : c.epsilons) finest = std::min(finest, e);
  const Solved r = solve_regularized(problem, finest, cfg);
  write_trajectory(out, r.traj);
  write_energy(out, r.energy);

  auto& sweep = out.file("sweep.csv");
  sweep << "epsilon,h2_sup,coeff_w1inf,error,final_error,"
        << (unique ? "perturbation_size" : "data_error") << '\n';
  for (std::size_t i = 0; i < rep.epsilons.size(); ++i) {
    const RegularizeOptions ropts{.mollify_background = !unique};
    const double w1 = w1inf_norm(regularize(problem, rep.epsilons[i], ropts).h);
    sweep << num(rep.epsilons[i]) << ',' << num(rep.solution_h2_sup[i]) << ',' << num(w1) << ','
          << num(rep.errors[i]) << ',' << num(rep.final_errors[i]) << ','
          << num(rep.data_errors[i]) << '\n';
  }

  auto& s = out.file("summary.txt");
  s << "inputs_digest = " << hex(rep.inputs_digest) << '\n';
  s << "reference = " << rep.reference_kind << '\n';
  s << "[exponents]" << (rep.dropped_largest ? " (largest eps dropped from fits)" : "") << '\n';
  s << "fitted error rate = " << short_num(rep.fitted_rate) << '\n';
  s << (unique ? "perturbation size rate = " : "data error rate = ") << short_num(rep.data_rate)
    << '\n';
  s << "N solution H2 snapshot-sup exponent = " << short_num(rep.solution_exponent) << '\n';
  write_bound_header(s);
  write_bounds(s, short_num(finest), r.energy);
  return rep.checks;
}

std::vector<Check> run_duhamel(const ExperimentConfig& c, const Problem& problem,
                               const SolveConfig& cfg, const ExperimentOptions& opts,
                               Outputs& out) {
  const DuhamelResult d =
      duhamel_check(problem, *c.perturbation, *c.epsilon, cfg, c.quadrature_intervals, opts);
  const Solved r = solve_regularized(problem, c.epsilon, cfg);
  write_trajectory(out, r.traj);
  write_energy(out, r.energy);

  auto& sweep = out.file("sweep.csv");
  sweep << "epsilon,h2_sup,coeff_w1inf,residual,difference_norm,forced_path_residual\n";
  double h2_sup = 0.0;
  for (const auto& snap : r.traj.snapshots) h2_sup = std::max(h2_sup, sobolev_norms(snap.u).h2);
  sweep << num(d.epsilon) << ',' << num(h2_sup) << ',' << num(w1inf_norm(r.h)) << ','
        << num(d.residual) << ',' << num(d.difference_norm) << ',' << num(d.forced_path_residual)
        << '\n';

  const double ratio = d.difference_norm > 0.0 ? d.residual / d.difference_norm : 0.0;
  auto& s = out.file("summary.txt");
  s << "epsilon = " << short_num(d.epsilon) << ", quadrature intervals = " << d.intervals << '\n';
  s << "reconstruction residual = " << short_num(d.residual) << " (" << short_num(ratio)
    << " of max ||U||)\n";
  s << "forced-path residual = " << short_num(d.forced_path_residual) << '\n';
  return {
      {"duhamel: reconstruction residual <= 5% of max ||U_eps||",
       d.residual <= 0.05 * d.difference_norm, "ratio " + short_num(ratio)},
      {"duhamel: U_eps solves the forced scheme (<= 1e-9 relative)",
       d.forced_path_residual <= 1e-9 * std::max(d.difference_norm, 1e-300),
       short_num(d.forced_path_residual)},
  };
}

}  // namespace

ExperimentConfig diagnose_config() {
  ExperimentConfig c;
  c.command = Command::diagnose;
  c.a = -1.0;
  c.b = 1.0;
  c.n = 513;
  c.boundary = Boundary::periodic;
  c.background = Background::constant(1.0);
  c.h0 = 1.0;
  c.initial.kind = InitialData::Kind::fourier_mode;
  c.initial.amplitude = 1.0;
  c.initial.mode = 1;
  c.initial.mollify = false;
  c.final_time = 0.1;
  c.dt = 1e-4;
  c.scheme = Scheme::crank_nicolson;
  c.snapshots = 50;
  return c;
}

int run(const ExperimentConfig& config, const RunOptions& options) {
  std::ostream* log = options.log;
  try {
    const ExperimentConfig c =
        config.command == Command::diagnose ? [&] {
          ExperimentConfig d = diagnose_config();
          d.output_dir = config.output_dir;
          return d;
        }()
                                            : config;
    if (auto errors = validate(c); !errors.empty()) {
      if (log)
        for (const auto& e : errors) *log << "config error: " << e << '\n';
      return kExitError;
    }
    const Problem problem = make_problem(c);
    const SolveConfig cfg = make_solve_config(c);
    const ExperimentOptions opts{.threads = options.threads};
    if (log && options.verbose)
      *log << "running " << to_string(c.command) << " on " << c.n << " nodes, "
           << cfg.steps() << " steps\n";

    Outputs out;
    write_header(out.file("summary.txt"), c);
    std::vector<Check> checks;
    switch (c.command) {
      case Command::solve: checks = run_solve(c, problem, cfg, out); break;
      case Command::diagnose: checks = run_diagnose(c, problem, cfg, out); break;
      case Command::sweep: checks = run_sweep(c, problem, cfg, opts, out); break;
      case Command::uniqueness:
      case Command::consistency: checks = run_convergence(c, problem, cfg, opts, out); break;
      case Command::duhamel: checks = run_duhamel(c, problem, cfg, opts, out); break;
    }
    write_checks(out.file("summary.txt"), checks);
    const bool ok = all_passed(checks);
    out.file("summary.txt") << "result = " << (ok ? "PASS" : "FAIL") << '\n';

    const std::string dir = options.output_dir.empty() ? c.output_dir : options.output_dir;
    out.flush(dir);
    if (log) *log << out.file("summary.txt").str();
    return ok ? kExitPass : kExitAssertion;
  } catch (const Error& e) {
    if (log) *log << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    if (log) *log << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace singheat
