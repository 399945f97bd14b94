#pragma once

// Friedrichs mollifiers psi (smooth, even, nonnegative, supported in [-1, 1],
// unit mass), their scalings psi_eps(x) = psi(x/eps)/eps, and discrete
// convolution of grid fields with psi_eps.

#include <cstddef>
#include <vector>

#include "singheat/grid.hpp"

namespace singheat {

enum class ProfileKind {
  exponential_bump,  // exp(-1/(1 - x^2)) on (-1, 1)
};

class MollifierKernel {
 public:
  /// Normalized bump c exp(-1/(1 - x^2)). c is fixed by a trapezoid rule with
  /// `samples` points on [-1, 1].
  static MollifierKernel standard_bump(std::size_t samples = 1'000'000);

  ProfileKind kind() const noexcept { return kind_; }
  double support_radius() const noexcept { return 1.0; }
  std::size_t samples() const noexcept { return samples_; }
  double normalization() const noexcept { return scale_; }

  /// Normalized profile; zero for |x| >= 1.
  double profile(double x) const noexcept;
  double raw_profile(double x) const noexcept;

  /// Trapezoid quadrature of profile over [-1, 1] at the normalization resolution.
  double mass() const;

 private:
  MollifierKernel(ProfileKind kind, std::size_t samples, double scale)
      : kind_(kind), samples_(samples), scale_(scale) {}

  ProfileKind kind_;
  std::size_t samples_;
  double scale_;
};

/// psi_eps for a given regularization parameter eps > 0.
class ScaledKernel {
 public:
  ScaledKernel(MollifierKernel base, double epsilon);

  const MollifierKernel& base() const noexcept { return base_; }
  double epsilon() const noexcept { return epsilon_; }

  /// Discrete convolution taps psi_eps(j dx) dx for j = -J..J, renormalized to
  /// unit sum. Throws under_resolved if eps < 4 dx.
  std::vector<double> taps(double dx) const;

 private:
  MollifierKernel base_;
  double epsilon_;
};

/// psi_eps(x) = psi(x/eps)/eps; zero for |x| >= eps.
double evaluate_scaled(const ScaledKernel& kernel, double x);

/// (f * psi_eps) sampled on f's grid. DirichletZero grids extend f by its
/// boundary value; periodic grids wrap.
GridField mollify_field(const GridField& f, const ScaledKernel& kernel);

/// Smallest admissible eps on a grid.
inline double min_epsilon(const Grid& grid) { return 4.0 * grid.dx(); }

}  // namespace singheat
