#include "singheat/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "singheat/error.hpp"
#include "singheat/fitting.hpp"

namespace singheat {

namespace {

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

// Runs fn(i) for i < count on up to `threads` workers; the first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double max_l2_difference(const Trajectory& a, const Trajectory& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.snapshots.size(); ++j)
    m = std::max(m, l2_norm(a.snapshots[j].u - b.snapshots[j].u));
  return m;
}

double snapshot_sup_h2(const Trajectory& traj, bool* at_initial, double* at_time = nullptr) {
  double best = 0.0;
  double initial = 0.0;
  double when = 0.0;
  for (std::size_t j = 0; j < traj.snapshots.size(); ++j) {
    const double v = sobolev_norms(traj.snapshots[j].u).h2;
    if (j == 0) initial = v;
    if (v > best) {
      best = v;
      when = traj.snapshots[j].time;
    }
  }
  if (at_initial) *at_initial = best <= initial * (1.0 + 1e-12);
  if (at_time) *at_time = when;
  return best;
}

// Ladders of >= 5 points drop the largest eps from slope fits.
bool drops_largest(std::span<const double> ladder) { return ladder.size() >= 5; }

double exponent(std::span<const double> eps, std::span<const double> norms) {
  return -fitted_rate(eps, norms, drops_largest(eps));
}

void check_problem_ladder(const Problem& problem, std::span<const double> ladder) {
  validate_ladder(ladder, 4);
  const double floor = min_epsilon(problem.grid);
  for (double e : ladder) {
    if (e < floor) {
      std::ostringstream msg;
      msg << "epsilon " << e << " < 4*dx " << floor;
      throw Error(ErrorKind::under_resolved, msg.str());
    }
  }
}

}  // namespace

std::string_view to_string(InitialData::Kind kind) {
  switch (kind) {
    case InitialData::Kind::gaussian: return "gaussian";
    case InitialData::Kind::mollified_step: return "mollified-step";
    case InitialData::Kind::fourier_mode: return "fourier-mode";
    case InitialData::Kind::file: return "file";
  }
  return "unknown";
}

GridField InitialData::sample(const Grid& grid) const {
  GridField f(grid);
  switch (kind) {
    case Kind::gaussian:
      f = GridField::sample(grid, [&](double x) {
        const double z = (x - center) / width;
        return amplitude * std::exp(-z * z);
      });
      break;
    case Kind::mollified_step:
      f = GridField::sample(grid, [&](double x) {
        if (x > lo && x < hi) return amplitude;
        if (x == lo || x == hi) return 0.5 * amplitude;
        return 0.0;
      });
      break;
    case Kind::fourier_mode: {
      const double k = 2.0 * std::numbers::pi * mode / grid.length();
      f = GridField::sample(grid, [&](double x) { return amplitude * std::sin(k * x); });
      break;
    }
    case Kind::file: {
      std::ifstream in(path);
      if (!in) throw Error(ErrorKind::io, "cannot open initial data file '" + path + "'");
      std::vector<double> values;
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        double x = 0.0, u = 0.0;
        if (std::sscanf(line.c_str(), "%lf,%lf", &x, &u) != 2) {
          if (values.empty()) continue;  // header
          throw Error(ErrorKind::io, "malformed row in '" + path + "': " + line);
        }
        const std::size_t i = values.size();
        if (i >= grid.size() || std::abs(x - grid.x(i)) > 1e-9 * std::max(1.0, grid.length()))
          throw Error(ErrorKind::io, "initial data file '" + path + "' does not match the grid");
        values.push_back(u);
      }
      if (values.size() != grid.size())
        throw Error(ErrorKind::io, "initial data file '" + path + "' has " +
                                       std::to_string(values.size()) + " rows, grid has " +
                                       std::to_string(grid.size()));
      f = GridField(grid, std::move(values));
      break;
    }
  }
  if (grid.boundary() == Boundary::dirichlet_zero) {
    f[0] = 0.0;
    f[f.size() - 1] = 0.0;
  }
  return f;
}

RegularizedProblem regularize(const Problem& problem, double epsilon, RegularizeOptions options) {
  const ScaledKernel kernel(problem.kernel, epsilon);
  RegularizedProblem r{epsilon,
                       regularize_coefficient(problem.coefficient, kernel, problem.grid, options),
                       problem.initial.sample(problem.grid)};
  if (problem.initial.mollify) {
    r.u0 = mollify_field(r.u0, kernel);
    if (problem.grid.boundary() == Boundary::dirichlet_zero) {
      r.u0[0] = 0.0;
      r.u0[r.u0.size() - 1] = 0.0;
    }
  }
  return r;
}

bool all_passed(std::span<const Check> checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed || c.advisory; });
}

SweepReport existence_sweep(const Problem& problem, std::span<const double> ladder,
                            const SolveConfig& config, ExperimentOptions options) {
  check_problem_ladder(problem, ladder);
  SweepReport report;
  report.epsilons.assign(ladder.begin(), ladder.end());
  report.per_eps.resize(ladder.size());
  report.trajectories.resize(ladder.size(), Trajectory{config, problem.grid, {}, {}});
  report.inputs_digest = digest(describe(problem, ladder, config));

  parallel_for(ladder.size(), options.threads, [&](std::size_t i) {
    const RegularizedProblem reg = regularize(problem, ladder[i]);
    const DiffusionOperator op = DiffusionOperator::build(reg.h, problem.face_rule);
    Trajectory traj = solve(reg.u0, op, config, ladder[i]);
    EpsilonRecord rec;
    rec.epsilon = ladder[i];
    rec.solution_h2_sup = snapshot_sup_h2(traj, &rec.sup_at_initial, &rec.sup_time);
    rec.coeff_linf = linf_norm(reg.h);
    rec.coeff_w1inf = w1inf_norm(reg.h);
    rec.coeff_min = reg.h.min();
    rec.data_h2 = sobolev_norms(reg.u0).h2;
    rec.energy = verify_identities(traj, reg.h, problem.face_rule);
    report.per_eps[i] = std::move(rec);
    report.trajectories[i] = std::move(traj);
  });

  std::vector<double> w1, dh2, sh2;
  for (const auto& r : report.per_eps) {
    w1.push_back(r.coeff_w1inf);
    dh2.push_back(r.data_h2);
    sh2.push_back(r.solution_h2_sup);
  }
  report.dropped_largest = drops_largest(ladder);
  report.coefficient_exponent = exponent(ladder, w1);
  report.data_exponent = exponent(ladder, dh2);
  report.solution_exponent = exponent(ladder, sh2);

  const double h0 = problem.coefficient.h0();
  const double bound = std::max(report.coefficient_exponent, 0.0) +
                       std::max(report.data_exponent, 0.0) + options.exponent_slack;

  std::string sup_detail;
  bool positive = true, sup_initial = true, e_mono = true, contraction = true, envelopes = true;
  std::string bound_detail;
  for (const auto& r : report.per_eps) {
    positive = positive && r.coeff_min >= h0 * (1.0 - 1e-12);
    sup_initial = sup_initial && r.sup_at_initial;
    if (!r.sup_at_initial)
      sup_detail += " eps=" + short_num(r.epsilon) + ":t=" + short_num(r.sup_time);
    e_mono = e_mono && r.energy.energy_monotone;
    for (const auto& b : r.energy.bound_checks) {
      if (b.name == "energy_estimate_3") contraction = contraction && b.satisfied;
      else envelopes = envelopes && b.satisfied;
      if (!b.satisfied) bound_detail += " " + b.name + "@eps=" + short_num(r.epsilon);
    }
  }
  report.checks = {
      {"assumption positivity: inf h_eps >= h0", positive, "h0=" + short_num(h0)},
      {"C-moderate coherence: N <= N0 + N1 + " + short_num(options.exponent_slack),
       report.solution_exponent <= bound,
       "N=" + short_num(report.solution_exponent) + " N0=" +
           short_num(report.coefficient_exponent) + " N1=" + short_num(report.data_exponent)},
      {"snapshot-sup of ||u_eps||_H2 attained at t=0", sup_initial,
       sup_initial ? "" : "max at" + sup_detail, true},
      {"energy E(t) <= E(0)", e_mono, ""},
      {"energy_estimate_3: ||u(t)|| <= ||u0||", contraction, bound_detail},
      {"energy_estimate envelopes", envelopes, bound_detail},
  };
  return report;
}

std::string_view to_string(PerturbationSpec::Kind kind) {
  return kind == PerturbationSpec::Kind::power_law ? "power-law" : "superpolynomial";
}

std::string_view to_string(PerturbationSpec::Target target) {
  switch (target) {
    case PerturbationSpec::Target::coefficient: return "coefficient";
    case PerturbationSpec::Target::data: return "data";
    case PerturbationSpec::Target::both: return "both";
  }
  return "unknown";
}

double PerturbationSpec::size(double epsilon) const {
  if (kind == Kind::power_law) return magnitude * std::pow(epsilon, order);
  return magnitude * std::exp(-1.0 / epsilon);
}

namespace {
GridField bump_profile(const Grid& grid, const MollifierKernel& kernel, double center,
                       double width) {
  if (!(width > 0.0) || center - width <= grid.a() || center + width >= grid.b()) {
    std::ostringstream msg;
    msg << "perturbation bump [" << center - width << ", " << center + width
        << "] must lie inside the domain";
    throw Error(ErrorKind::placement, msg.str());
  }
  return GridField::sample(grid, [&](double x) { return kernel.profile((x - center) / width); });
}
}  // namespace

GridField coefficient_bump(const Grid& grid, const MollifierKernel& kernel, double center,
                           double width, double size) {
  GridField b = bump_profile(grid, kernel, center, width);
  b *= size / w1inf_norm(b);
  return b;
}

GridField data_bump(const Grid& grid, const MollifierKernel& kernel, double center, double width,
                    double size) {
  GridField b = bump_profile(grid, kernel, center, width);
  b *= size / l2_norm(b);
  return b;
}

RegularizedProblem perturb(const Problem& problem, const RegularizedProblem& base,
                           const PerturbationSpec& spec) {
  using Target = PerturbationSpec::Target;
  const bool on_coefficient =
      spec.applies_to == Target::coefficient || spec.applies_to == Target::both;
  // A coefficient bump must not share support with a regularized atom.
  for (const auto& atom : problem.coefficient.atoms()) {
    if (on_coefficient && std::abs(atom.location - spec.center) < spec.width + base.epsilon) {
      std::ostringstream msg;
      msg << "perturbation bump at " << spec.center << " overlaps the " << to_string(atom.kind)
          << " atom at " << atom.location;
      throw Error(ErrorKind::placement, msg.str());
    }
  }
  RegularizedProblem out = base;
  const double size = spec.size(base.epsilon);
  if (on_coefficient) {
    out.h += coefficient_bump(problem.grid, problem.kernel, spec.center, spec.width, size);
    if (out.h.min() < 0.5 * problem.coefficient.h0()) {
      std::ostringstream msg;
      msg << "perturbed coefficient drops to " << out.h.min() << " below h0/2";
      throw Error(ErrorKind::positivity, msg.str());
    }
  }
  if (spec.applies_to == Target::data || spec.applies_to == Target::both)
    out.u0 += data_bump(problem.grid, problem.kernel, spec.center, spec.width, size);
  return out;
}

ConvergenceReport uniqueness_experiment(const Problem& problem, const PerturbationSpec& spec,
                                        std::span<const double> ladder, const SolveConfig& config,
                                        ExperimentOptions options) {
  check_problem_ladder(problem, ladder);
  ConvergenceReport report;
  report.reference_kind = "unperturbed-net";
  report.epsilons.assign(ladder.begin(), ladder.end());
  const std::size_t count = ladder.size();
  report.errors.resize(count);
  report.final_errors.resize(count);
  report.data_errors.resize(count);
  report.solution_h2_sup.resize(count);
  std::ostringstream canon;
  canon << describe(problem, ladder, config) << "perturbation=" << to_string(spec.kind) << ','
        << to_string(spec.applies_to) << ',' << num(spec.order) << ',' << num(spec.magnitude)
        << ',' << num(spec.center) << ',' << num(spec.width) << '\n';
  report.inputs_digest = digest(canon.str());

  parallel_for(count, options.threads, [&](std::size_t i) {
    const RegularizedProblem base = regularize(problem, ladder[i]);
    const RegularizedProblem pert = perturb(problem, base, spec);
    const Trajectory u = solve(base.u0, DiffusionOperator::build(base.h, problem.face_rule), config);
    const Trajectory v = solve(pert.u0, DiffusionOperator::build(pert.h, problem.face_rule), config);
    report.errors[i] = max_l2_difference(u, v);
    report.final_errors[i] = l2_norm(u.final() - v.final());
    report.data_errors[i] = spec.size(ladder[i]);
    report.solution_h2_sup[i] = snapshot_sup_h2(u, nullptr);
  });

  report.dropped_largest = drops_largest(ladder);
  report.solution_exponent = exponent(ladder, report.solution_h2_sup);
  const bool all_zero = std::all_of(report.errors.begin(), report.errors.end(),
                                    [](double e) { return e == 0.0; });
  report.fitted_rate = all_zero ? 0.0 : fitted_rate(ladder, report.errors, report.dropped_largest);
  report.data_rate = spec.magnitude > 0.0
                         ? fitted_rate(ladder, report.data_errors, report.dropped_largest)
                         : 0.0;

  if (spec.kind == PerturbationSpec::Kind::power_law) {
    const double need = spec.order - std::max(report.solution_exponent, 0.0) - 0.25;
    report.checks.push_back(
        {"uniqueness: decay rate >= k - N - 0.25 for power-law(k=" + short_num(spec.order) + ")",
         all_zero || report.fitted_rate >= need,
         "rate=" + short_num(report.fitted_rate) + " need=" + short_num(need) +
             " N=" + short_num(report.solution_exponent)});
  } else {
    bool bounded = true;
    for (double e : report.errors) bounded = bounded && e <= report.errors.front();
    double tail = 0.0;
    if (!all_zero) {
      const std::size_t k = count - 3;
      tail = fitted_rate(std::span(ladder).subspan(k), std::span(report.errors).subspan(k));
    }
    report.checks.push_back({"uniqueness: errors never exceed the largest-eps error", bounded, ""});
    report.checks.push_back({"uniqueness: superpolynomial decay, slope > 3 on final three points",
                             all_zero || tail > 3.0, "slope=" + short_num(tail)});
  }
  return report;
}

DuhamelResult duhamel_check(const Problem& problem, const PerturbationSpec& spec, double epsilon,
                            const SolveConfig& config, std::size_t intervals,
                            ExperimentOptions options) {
  if (intervals == 0) throw Error(ErrorKind::invalid_parameter, "need >= 1 quadrature interval");
  config.validate();
  const std::size_t total = config.steps();
  if (total % intervals != 0) {
    std::ostringstream msg;
    msg << "quadrature spacing T/" << intervals << " is not a multiple of dt (" << total
        << " steps)";
    throw Error(ErrorKind::invalid_parameter, msg.str());
  }
  const std::size_t stride = total / intervals;
  const double dt = config.dt;
  const double ds = dt * static_cast<double>(stride);

  const RegularizedProblem base = regularize(problem, epsilon);
  const RegularizedProblem pert = perturb(problem, base, spec);
  const DiffusionOperator op = DiffusionOperator::build(base.h, problem.face_rule);
  const DiffusionOperator op_pert = DiffusionOperator::build(pert.h, problem.face_rule);

  // u at every step (forcing needs it), u~ at the quadrature nodes.
  SolveConfig every = SolveConfig::uniform(config.final_time, dt, config.scheme, total);
  SolveConfig nodes = SolveConfig::uniform(config.final_time, dt, config.scheme, intervals);
  const Trajectory u = solve(base.u0, op, every);
  const Trajectory v = solve(pert.u0, op_pert, nodes);

  const Grid& grid = problem.grid;
  auto forcing_at = [&](std::size_t step) {
    const GridField& us = u.snapshots[step].u;
    return op.apply(us) - op_pert.apply(us);
  };

  std::vector<GridField> direct;
  for (std::size_t j = 0; j <= intervals; ++j)
    direct.push_back(u.snapshots[j * stride].u - v.snapshots[j].u);

  // Forced solve of U_t = A~ U + (A - A~) u, the same computation by another route.
  const Forcing forcing = [&](double t, std::span<double> out) {
    const auto k = static_cast<std::size_t>(std::llround(t / dt));
    const GridField f = forcing_at(std::min(k, total));
    std::copy(f.values().begin(), f.values().end(), out.begin());
  };
  const Trajectory forced = solve_with_forcing(direct.front(), op_pert, nodes, forcing);

  // V: homogeneous solve of the initial difference; W_q: kernel solve from f(s_q).
  const Trajectory hom = solve(direct.front(), op_pert, nodes);
  std::vector<std::vector<GridField>> kernel_solves(intervals + 1);
  parallel_for(intervals + 1, options.threads, [&](std::size_t q) {
    const GridField f = forcing_at(q * stride);
    if (q == intervals) {
      kernel_solves[q] = {f};
      return;
    }
    const double horizon = ds * static_cast<double>(intervals - q);
    const Trajectory w = solve(f, op_pert,
                               SolveConfig::uniform(horizon, dt, config.scheme, intervals - q));
    for (const auto& snap : w.snapshots) kernel_solves[q].push_back(snap.u);
  });

  DuhamelResult result;
  result.epsilon = epsilon;
  result.intervals = intervals;
  for (std::size_t j = 0; j <= intervals; ++j) {
    GridField rec = hom.snapshots[j].u;
    if (j > 0) {
      GridField integral(grid);
      for (std::size_t q = 0; q <= j; ++q) {
        const double w = (q == 0 || q == j) ? 0.5 * ds : ds;
        integral += w * kernel_solves[q][j - q];
      }
      rec += integral;
    }
    result.residual = std::max(result.residual, l2_norm(direct[j] - rec));
    result.difference_norm = std::max(result.difference_norm, l2_norm(direct[j]));
    result.forced_path_residual =
        std::max(result.forced_path_residual, l2_norm(direct[j] - forced.snapshots[j].u));
  }
  return result;
}

ConvergenceReport consistency_experiment(const Problem& problem, std::span<const double> ladder,
                                         const SolveConfig& config, ConsistencyOptions consistency,
                                         ExperimentOptions options) {
  if (problem.coefficient.has_atoms())
    throw Error(ErrorKind::inadmissible_input,
                "consistency needs a regular coefficient; remove the singular atoms");
  check_problem_ladder(problem, ladder);

  ConvergenceReport report;
  report.reference_kind = consistency.fine_reference ? "classical-solve-4x" : "classical-solve";
  report.epsilons.assign(ladder.begin(), ladder.end());
  report.inputs_digest = digest(describe(problem, ladder, config) + "fine_reference=" +
                                (consistency.fine_reference ? "1" : "0") + '\n');

  // Classical solution with the unregularized coefficient and data.
  const Grid& grid = problem.grid;
  const Grid ref_grid = consistency.fine_reference ? grid.refined(4) : grid;
  const std::size_t stride = consistency.fine_reference ? 4 : 1;
  const GridField h_ref = GridField::sample(ref_grid, problem.coefficient.background());
  const GridField u0_ref_fine = problem.initial.sample(ref_grid);
  const Trajectory ref_traj =
      solve(u0_ref_fine, DiffusionOperator::build(h_ref, problem.face_rule), config);
  std::vector<GridField> reference;
  for (const auto& snap : ref_traj.snapshots) {
    std::vector<double> coarse(grid.size());
    for (std::size_t i = 0; i < coarse.size(); ++i) coarse[i] = snap.u[i * stride];
    reference.emplace_back(grid, std::move(coarse));
  }
  const GridField u0 = problem.initial.sample(grid);

  const std::size_t count = ladder.size();
  report.errors.resize(count);
  report.final_errors.resize(count);
  report.data_errors.resize(count);
  report.solution_h2_sup.resize(count);
  parallel_for(count, options.threads, [&](std::size_t i) {
    const RegularizedProblem reg = regularize(problem, ladder[i], {.mollify_background = true});
    const Trajectory traj =
        solve(reg.u0, DiffusionOperator::build(reg.h, problem.face_rule), config, ladder[i]);
    double err = 0.0;
    for (std::size_t j = 0; j < traj.snapshots.size(); ++j)
      err = std::max(err, l2_norm(traj.snapshots[j].u - reference[j]));
    report.errors[i] = err;
    report.final_errors[i] = l2_norm(traj.final() - reference.back());
    report.data_errors[i] = l2_norm(reg.u0 - u0);
    report.solution_h2_sup[i] = snapshot_sup_h2(traj, nullptr);
  });

  report.dropped_largest = drops_largest(ladder);
  report.solution_exponent = exponent(ladder, report.solution_h2_sup);
  const double scale = std::max(1.0, l2_norm(u0));
  const bool exact = std::all_of(report.errors.begin(), report.errors.end(),
                                 [&](double e) { return e <= 1e-12 * scale; });
  report.fitted_rate = exact ? 0.0 : fitted_rate(ladder, report.errors, report.dropped_largest);
  const bool data_exact = std::all_of(report.data_errors.begin(), report.data_errors.end(),
                                      [&](double e) { return e <= 1e-12 * scale; });
  report.data_rate =
      data_exact ? 0.0 : fitted_rate(ladder, report.data_errors, report.dropped_largest);

  bool tail_decreasing = true;
  for (std::size_t i = count - 2; i < count; ++i)
    tail_decreasing = tail_decreasing && report.errors[i] <= report.errors[i - 1];

  std::string errs;
  for (double e : report.errors) errs += short_num(e) + " ";
  report.checks = {
      {"consistency: errors non-increasing over the final three eps",
       exact || tail_decreasing, errs},
      {"consistency: fitted rate >= 0.75", exact || report.fitted_rate >= 0.75,
       exact ? "errors at roundoff (<= 1e-12)" : "rate=" + short_num(report.fitted_rate)},
      {"consistency: ||u0_eps - u0|| rate >= 1", data_exact || report.data_rate >= 1.0,
       data_exact ? "data not regularized" : "rate=" + short_num(report.data_rate)},
  };
  return report;
}

std::uint64_t digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string describe(const Problem& problem, std::span<const double> ladder,
                     const SolveConfig& config) {
  std::ostringstream s;
  const Grid& g = problem.grid;
  s << "grid=" << num(g.a()) << ',' << num(g.b()) << ',' << g.nodes() << ','
    << (g.boundary() == Boundary::periodic ? "periodic" : "dirichlet") << '\n';
  s << "face_rule=" << (problem.face_rule == FaceRule::arithmetic ? "arithmetic" : "harmonic")
    << '\n';
  const auto& c = problem.coefficient;
  const auto& bg = c.background();
  s << "background=" << static_cast<int>(bg.kind) << ',' << num(bg.value) << ',' << num(bg.slope)
    << ',' << num(bg.amplitude) << ',' << num(bg.frequency) << ',' << num(bg.phase) << '\n';
  s << "h0=" << num(c.h0()) << '\n';
  for (const auto& a : c.atoms())
    s << "atom=" << to_string(a.kind) << ',' << num(a.location) << ',' << num(a.weight) << ','
      << num(a.left) << ',' << num(a.right) << '\n';
  const auto& u = problem.initial;
  s << "initial=" << to_string(u.kind) << ',' << num(u.amplitude) << ',' << num(u.center) << ','
    << num(u.width) << ',' << num(u.lo) << ',' << num(u.hi) << ',' << u.mode << ',' << u.path
    << ',' << u.mollify << '\n';
  s << "kernel=" << problem.kernel.samples() << '\n';
  s << "time=" << num(config.final_time) << ',' << num(config.dt) << ','
    << to_string(config.scheme);
  for (double t : config.snapshot_times) s << ',' << num(t);
  s << "\nladder=";
  for (double e : ladder) s << num(e) << ',';
  s << '\n';
  return s.str();
}

}  // namespace singheat
