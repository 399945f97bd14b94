#pragma once

// Sweeps over a ladder of regularization parameters eps realizing the
// existence (moderateness), uniqueness (stability under negligible
// perturbations) and consistency (convergence to the classical solution)
// statements for the regularized heat equation.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "singheat/coefficients.hpp"
#include "singheat/energy.hpp"
#include "singheat/grid.hpp"
#include "singheat/mollifier.hpp"
#include "singheat/solver.hpp"

namespace singheat {

struct InitialData {
  enum class Kind { gaussian, mollified_step, fourier_mode, file };

  Kind kind = Kind::gaussian;
  double amplitude = 1.0;
  double center = 0.0;  // gaussian
  double width = 0.1;   // gaussian: amplitude * exp(-((x - center)/width)^2)
  double lo = -0.25;    // mollified-step: amplitude on [lo, hi], 0 elsewhere
  double hi = 0.25;
  int mode = 1;         // fourier-mode: amplitude * sin(2 pi mode x / (b - a))
  std::string path;     // file: CSV rows "x,u", one per stored node
  bool mollify = true;  // u0_eps = u0 * psi_eps

  /// Unregularized data on the grid; DirichletZero boundary values are set to 0.
  GridField sample(const Grid& grid) const;

  friend bool operator==(const InitialData&, const InitialData&) = default;
};

std::string_view to_string(InitialData::Kind kind);

struct Problem {
  Grid grid;
  SingularCoefficient coefficient;
  InitialData initial;
  FaceRule face_rule = FaceRule::arithmetic;
  MollifierKernel kernel = MollifierKernel::standard_bump();
};

struct RegularizedProblem {
  double epsilon = 0.0;
  GridField h;
  GridField u0;
};

RegularizedProblem regularize(const Problem& problem, double epsilon,
                              RegularizeOptions options = {});

/// One named pass/fail outcome; `detail` carries the numbers behind it.
/// Advisory checks are reported but do not decide the overall result.
struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
  bool advisory = false;
};

/// True when every non-advisory check passed.
bool all_passed(std::span<const Check> checks);

struct EpsilonRecord {
  double epsilon = 0.0;
  double solution_h2_sup = 0.0;  // max over snapshots ("snapshot-sup")
  bool sup_at_initial = true;    // the max sits at t = 0
  double sup_time = 0.0;         // snapshot time of the max
  double coeff_linf = 0.0;
  double coeff_w1inf = 0.0;
  double coeff_min = 0.0;
  double data_h2 = 0.0;
  EnergyReport energy;
};

struct SweepReport {
  std::vector<double> epsilons;
  std::vector<EpsilonRecord> per_eps;
  std::vector<Trajectory> trajectories;  // same order as epsilons
  double coefficient_exponent = 0.0;     // N0, W^{1,inf}
  double data_exponent = 0.0;            // N1, H^2
  double solution_exponent = 0.0;        // N, snapshot-sup H^2
  bool dropped_largest = false;
  std::uint64_t inputs_digest = 0;
  std::vector<Check> checks;
};

struct ExperimentOptions {
  unsigned threads = 1;  // 0 = hardware concurrency
  /// Slack on the existence exponent bound N <= N0 + N1 + slack.
  double exponent_slack = 0.25;
};

SweepReport existence_sweep(const Problem& problem, std::span<const double> ladder,
                            const SolveConfig& config, ExperimentOptions options = {});

struct PerturbationSpec {
  enum class Kind { power_law, superpolynomial };
  enum class Target { coefficient, data, both };

  Kind kind = Kind::power_law;
  Target applies_to = Target::coefficient;
  double order = 3.0;      // k for power_law
  double magnitude = 1.0;  // C_k
  double center = 0.5;     // bump location
  double width = 0.2;      // bump half-width

  /// C_k eps^k, or C exp(-1/eps).
  double size(double epsilon) const;

  friend bool operator==(const PerturbationSpec&, const PerturbationSpec&) = default;
};

std::string_view to_string(PerturbationSpec::Kind kind);
std::string_view to_string(PerturbationSpec::Target target);

/// Smooth bump of the given half-width scaled to W^{1,inf} size `size` on the grid.
GridField coefficient_bump(const Grid& grid, const MollifierKernel& kernel, double center,
                           double width, double size);
/// Same profile scaled to L2 size `size`.
GridField data_bump(const Grid& grid, const MollifierKernel& kernel, double center, double width,
                    double size);

/// (h~_eps, u~0_eps) for a regularized problem.
RegularizedProblem perturb(const Problem& problem, const RegularizedProblem& base,
                           const PerturbationSpec& spec);

struct ConvergenceReport {
  std::string reference_kind;
  std::vector<double> epsilons;
  std::vector<double> errors;        // snapshot-sup L2
  std::vector<double> final_errors;  // at T
  std::vector<double> data_errors;   // consistency: ||u0_eps - u0||; uniqueness: perturbation size
  std::vector<double> solution_h2_sup;
  double fitted_rate = 0.0;
  double data_rate = 0.0;
  double solution_exponent = 0.0;
  bool dropped_largest = false;
  std::uint64_t inputs_digest = 0;
  std::vector<Check> checks;
};

ConvergenceReport uniqueness_experiment(const Problem& problem, const PerturbationSpec& spec,
                                        std::span<const double> ladder, const SolveConfig& config,
                                        ExperimentOptions options = {});

struct DuhamelResult {
  double epsilon = 0.0;
  std::size_t intervals = 0;        // quadrature intervals on [0, T]
  double residual = 0.0;            // max_j ||U(t_j) - U_rec(t_j)||
  double difference_norm = 0.0;     // max_j ||U(t_j)||
  double forced_path_residual = 0.0;  // direct U vs forced solve of the U equation
};

/// Reconstructs U = u - u~ from the homogeneous solve of the initial
/// difference plus a trapezoid rule in s of kernel solves started from
/// f(s) = (A - A~) u(s). T/intervals must be a multiple of dt.
DuhamelResult duhamel_check(const Problem& problem, const PerturbationSpec& spec, double epsilon,
                            const SolveConfig& config, std::size_t intervals,
                            ExperimentOptions options = {});

struct ConsistencyOptions {
  /// Reference on a 4x finer grid instead of the run grid.
  bool fine_reference = false;
};

ConvergenceReport consistency_experiment(const Problem& problem, std::span<const double> ladder,
                                         const SolveConfig& config,
                                         ConsistencyOptions consistency = {},
                                         ExperimentOptions options = {});

/// FNV-1a 64 of a canonical text.
std::uint64_t digest(std::string_view text);
std::string describe(const Problem& problem, std::span<const double> ladder,
                     const SolveConfig& config);

}  // namespace singheat
