#pragma once

// Implicit time integration of u_t = A u (+ f) for a DiffusionOperator A.

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "singheat/grid.hpp"
#include "singheat/tridiagonal.hpp"

namespace singheat {

enum class Scheme { implicit_euler, crank_nicolson };
std::string_view to_string(Scheme scheme);

struct SolveConfig {
  double final_time = 0.1;
  double dt = 1e-3;
  Scheme scheme = Scheme::implicit_euler;
  /// Requested output times in [0, T]; each is rounded to the nearest step.
  std::vector<double> snapshot_times;

  /// count+1 equally spaced snapshots 0, T/count, ..., T.
  static SolveConfig uniform(double final_time, double dt, Scheme scheme, std::size_t count);

  std::size_t steps() const;
  void validate() const;
};

struct Snapshot {
  std::size_t step = 0;
  double time = 0.0;
  GridField u;
};

struct Trajectory {
  SolveConfig config;
  Grid grid;
  std::optional<double> epsilon;
  std::vector<Snapshot> snapshots;

  const GridField& initial() const { return snapshots.front().u; }
  const GridField& final() const { return snapshots.back().u; }
};

/// Factorization of (I - c A) reused across steps.
class ImplicitSystem {
 public:
  ImplicitSystem(const DiffusionOperator& op, double c);

  /// Solves (I - c A) x = rhs in place. DirichletZero rows are pinned to 0.
  void solve(std::span<double> rhs) const;

 private:
  Boundary boundary_;
  std::optional<TridiagonalFactor> interior_;
  std::optional<CyclicTridiagonalFactor> cyclic_;
};

/// One time step from u. Builds a fresh factorization; solve() reuses one.
GridField step(const GridField& u, const DiffusionOperator& op, double dt, Scheme scheme);

Trajectory solve(const GridField& u0, const DiffusionOperator& op, const SolveConfig& config,
                 std::optional<double> epsilon = std::nullopt);

/// Forcing provider: writes f(t, .) into `out`.
using Forcing = std::function<void(double t, std::span<double> out)>;

/// Implicit Euler: (I - dt A) u' = u + dt f(t_{m+1}).
/// Crank-Nicolson: (I - dt/2 A) u' = (I + dt/2 A) u + dt/2 (f(t_m) + f(t_{m+1})).
Trajectory solve_with_forcing(const GridField& u0, const DiffusionOperator& op,
                              const SolveConfig& config, const Forcing& forcing,
                              std::optional<double> epsilon = std::nullopt);

}  // namespace singheat
