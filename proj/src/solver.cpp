#include "singheat/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "singheat/error.hpp"

namespace singheat {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::implicit_euler: return "implicit-euler";
    case Scheme::crank_nicolson: return "crank-nicolson";
  }
  return "unknown";
}

SolveConfig SolveConfig::uniform(double final_time, double dt, Scheme scheme, std::size_t count) {
  SolveConfig c;
  c.final_time = final_time;
  c.dt = dt;
  c.scheme = scheme;
  if (count == 0) count = 1;
  for (std::size_t k = 0; k <= count; ++k)
    c.snapshot_times.push_back(final_time * static_cast<double>(k) / static_cast<double>(count));
  return c;
}

std::size_t SolveConfig::steps() const {
  return static_cast<std::size_t>(std::llround(final_time / dt));
}

void SolveConfig::validate() const {
  if (!(dt > 0.0) || !(final_time > 0.0) || dt > final_time || !std::isfinite(final_time)) {
    std::ostringstream msg;
    msg << "time stepping needs 0 < dt <= T, got dt=" << dt << " T=" << final_time;
    throw Error(ErrorKind::invalid_parameter, msg.str());
  }
  if (!std::is_sorted(snapshot_times.begin(), snapshot_times.end()))
    throw Error(ErrorKind::invalid_parameter, "snapshot times must be sorted");
  for (double t : snapshot_times) {
    if (t < 0.0 || t > final_time * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "snapshot time " << t << " outside [0, " << final_time << "]";
      throw Error(ErrorKind::invalid_parameter, msg.str());
    }
  }
}

ImplicitSystem::ImplicitSystem(const DiffusionOperator& op, double c)
    : boundary_(op.grid().boundary()) {
  const Grid& g = op.grid();
  const auto f = op.faces();
  const double s = c / (g.dx() * g.dx());
  if (boundary_ == Boundary::periodic) {
    const std::size_t m = g.size();
    std::vector<double> lower(m), diag(m), upper(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double fl = f[(i + m - 1) % m];
      const double fr = f[i];
      lower[i] = -s * fl;
      upper[i] = -s * fr;
      diag[i] = 1.0 + s * (fl + fr);
    }
    cyclic_.emplace(lower, diag, upper);
  } else {
    const std::size_t m = g.size() - 2;  // interior unknowns 1..n-2
    std::vector<double> lower(m), diag(m), upper(m);
    for (std::size_t k = 0; k < m; ++k) {
      const double fl = f[k];
      const double fr = f[k + 1];
      lower[k] = -s * fl;
      upper[k] = -s * fr;
      diag[k] = 1.0 + s * (fl + fr);
    }
    interior_.emplace(lower, diag, upper);
  }
}

void ImplicitSystem::solve(std::span<double> rhs) const {
  if (cyclic_) {
    cyclic_->solve(rhs);
    return;
  }
  const std::size_t n = rhs.size();
  interior_->solve(rhs.subspan(1, n - 2));
  rhs[0] = 0.0;
  rhs[n - 1] = 0.0;
}

namespace {

class Stepper {
 public:
  Stepper(const DiffusionOperator& op, double dt, Scheme scheme)
      : op_(op), dt_(dt), scheme_(scheme),
        system_(op, scheme == Scheme::implicit_euler ? dt : 0.5 * dt),
        work_(op.grid().size()) {}

  // u <- u_{m+1}; f_now/f_next are optional forcing samples at t_m, t_{m+1}.
  void advance(std::span<double> u, const double* f_now, const double* f_next) {
    const std::size_t m = u.size();
    if (scheme_ == Scheme::crank_nicolson) {
      op_.apply(u, work_);
      for (std::size_t i = 0; i < m; ++i) u[i] += 0.5 * dt_ * work_[i];
      if (f_next)
        for (std::size_t i = 0; i < m; ++i) u[i] += 0.5 * dt_ * (f_now[i] + f_next[i]);
    } else if (f_next) {
      for (std::size_t i = 0; i < m; ++i) u[i] += dt_ * f_next[i];
    }
    system_.solve(u);
  }

 private:
  const DiffusionOperator& op_;
  double dt_;
  Scheme scheme_;
  ImplicitSystem system_;
  std::vector<double> work_;
};

std::vector<std::size_t> snapshot_steps(const SolveConfig& config) {
  std::vector<std::size_t> steps{0};
  const std::size_t total = config.steps();
  for (double t : config.snapshot_times) {
    auto k = static_cast<std::size_t>(std::llround(t / config.dt));
    k = std::min(k, total);
    if (k != steps.back()) steps.push_back(k);
  }
  return steps;
}

Trajectory integrate(const GridField& u0, const DiffusionOperator& op, const SolveConfig& config,
                     const Forcing* forcing, std::optional<double> epsilon) {
  config.validate();
  if (!(u0.grid() == op.grid()))
    throw Error(ErrorKind::invalid_parameter, "initial data and operator live on different grids");

  Trajectory traj{config, u0.grid(), epsilon, {}};
  const std::vector<std::size_t> wanted = snapshot_steps(config);
  const std::size_t total = config.steps();
  const double dt = config.dt;

  traj.snapshots.push_back({0, 0.0, u0});
  std::vector<double> u(u0.values().begin(), u0.values().end());
  std::vector<double> f_now, f_next;
  if (forcing) {
    f_now.assign(u.size(), 0.0);
    f_next.assign(u.size(), 0.0);
    (*forcing)(0.0, f_now);
  }

  Stepper stepper(op, dt, config.scheme);
  std::size_t next = 1;
  for (std::size_t k = 1; k <= total && next < wanted.size(); ++k) {
    if (forcing) (*forcing)(static_cast<double>(k) * dt, f_next);
    stepper.advance(u, forcing ? f_now.data() : nullptr, forcing ? f_next.data() : nullptr);
    if (forcing) std::swap(f_now, f_next);
    if (k == wanted[next]) {
      traj.snapshots.push_back({k, static_cast<double>(k) * dt, GridField(traj.grid, u)});
      ++next;
    }
  }
  return traj;
}

}  // namespace

GridField step(const GridField& u, const DiffusionOperator& op, double dt, Scheme scheme) {
  if (!(dt > 0.0)) throw Error(ErrorKind::invalid_parameter, "dt must be positive");
  if (!(u.grid() == op.grid()))
    throw Error(ErrorKind::invalid_parameter, "field and operator live on different grids");
  Stepper stepper(op, dt, scheme);
  std::vector<double> v(u.values().begin(), u.values().end());
  stepper.advance(v, nullptr, nullptr);
  return GridField(u.grid(), std::move(v));
}

Trajectory solve(const GridField& u0, const DiffusionOperator& op, const SolveConfig& config,
                 std::optional<double> epsilon) {
  return integrate(u0, op, config, nullptr, epsilon);
}

Trajectory solve_with_forcing(const GridField& u0, const DiffusionOperator& op,
                              const SolveConfig& config, const Forcing& forcing,
                              std::optional<double> epsilon) {
  return integrate(u0, op, config, &forcing, epsilon);
}

}  // namespace singheat
