#pragma once

// Discrete energy functional E = ||u||^2 + ||h^{1/2} u_x||^2 and checks of
// the energy identities and a-priori bounds along a trajectory.

#include <string>
#include <vector>

#include "singheat/grid.hpp"
#include "singheat/solver.hpp"

namespace singheat {

struct EnergyValues {
  double energy = 0.0;       // l2sq + weighted_h1
  double l2sq = 0.0;         // sum u_i^2 dx
  double weighted_h1 = 0.0;  // sum h_{i+1/2} ((u_{i+1} - u_i)/dx)^2 dx
};

/// Face-averaged h (same rule as the operator). Throws positivity for h <= 0.
EnergyValues energy_functional(const GridField& u, const GridField& h,
                               FaceRule rule = FaceRule::arithmetic);

struct BoundCheck {
  std::string name;
  double lhs_max = 0.0;  // max over snapshots
  double rhs = 0.0;
  double ratio = 0.0;    // lhs_max / rhs
  double envelope = 1.0;
  bool within_envelope = false;
  bool monotone = false;           // lhs non-increasing along snapshots
  bool monotone_required = false;  // whether `monotone` enters `satisfied`
  bool satisfied = false;
};

struct EnergyReport {
  std::vector<double> times;
  std::vector<double> energy;
  std::vector<double> l2;
  std::vector<double> weighted_h1;
  /// Residual of (1/2) d/dt ||u||^2 + ||h^{1/2} u_x||^2 = 0 on [t_{m-1}, t_m]; 0 in row 0.
  std::vector<double> residual;
  /// Residual of ||u_t||^2 + (1/2) d/dt ||h^{1/2} u_x||^2 = 0, same layout.
  std::vector<double> residual_ut;
  double max_residual = 0.0;
  double max_residual_ut = 0.0;
  double max_energy_jump = 0.0;  // largest E_{m+1} - E_m, 0 if none
  bool energy_monotone = true;   // E_{m+1} <= E_m + 1e-12 E_0
  bool l2_monotone = true;
  bool weighted_h1_monotone = true;
  std::vector<BoundCheck> bound_checks;
};

/// Relative slack used by every monotonicity test.
inline constexpr double kMonotoneSlack = 1e-12;

EnergyReport verify_identities(const Trajectory& traj, const GridField& h,
                               FaceRule rule = FaceRule::arithmetic);

/// The four a-priori estimates, named energy_estimate, energy_estimate_1,
/// energy_estimate_2 (envelope 10) and energy_estimate_3 (envelope 1).
std::vector<BoundCheck> check_apriori_bounds(const Trajectory& traj, const GridField& h,
                                             const GridField& u0);

}  // namespace singheat
