#pragma once

// Singular thermal conductivities h = background + atoms, their regularized
// nets h_eps on a grid, and the norms used to measure moderateness.

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "singheat/grid.hpp"
#include "singheat/mollifier.hpp"

namespace singheat {

/// Smooth part of the conductivity.
struct Background {
  enum class Kind { constant, affine, sinusoid };

  Kind kind = Kind::constant;
  // constant: value; affine: intercept + slope*x; sinusoid: mean + amplitude*sin(frequency*x + phase)
  double value = 1.0;
  double slope = 0.0;
  double amplitude = 0.0;
  double frequency = 0.0;
  double phase = 0.0;

  static Background constant(double c) { return {Kind::constant, c, 0, 0, 0, 0}; }
  static Background affine(double intercept, double slope) {
    return {Kind::affine, intercept, slope, 0, 0, 0};
  }
  static Background sinusoid(double mean, double amplitude, double frequency, double phase = 0.0) {
    return {Kind::sinusoid, mean, 0, amplitude, frequency, phase};
  }

  double operator()(double x) const;
  friend bool operator==(const Background&, const Background&) = default;
};

enum class AtomKind { dirac_delta, dirac_delta_squared, jump };

std::string_view to_string(AtomKind kind);

struct SingularAtom {
  AtomKind kind = AtomKind::dirac_delta;
  double location = 0.0;
  double weight = 1.0;
  // jump only: weight * left for x < location, weight * right for x > location
  double left = 0.0;
  double right = 0.0;

  friend bool operator==(const SingularAtom&, const SingularAtom&) = default;
};

class SingularCoefficient {
 public:
  /// Throws invalid_parameter for h0 <= 0, negative weights or negative jump values.
  SingularCoefficient(Background background, double h0, std::vector<SingularAtom> atoms = {});

  const Background& background() const noexcept { return background_; }
  double h0() const noexcept { return h0_; }
  const std::vector<SingularAtom>& atoms() const noexcept { return atoms_; }
  bool has_atoms() const noexcept { return !atoms_.empty(); }

  friend bool operator==(const SingularCoefficient&, const SingularCoefficient&) = default;

 private:
  Background background_;
  double h0_;
  std::vector<SingularAtom> atoms_;
};

/// Contribution of one atom at regularization eps:
///   delta   -> weight * psi_eps(x - location)
///   delta^2 -> weight * eps^-2 psi((x - location)/eps)^2
///   jump    -> mollified sampled step
GridField regularize_atom(const SingularAtom& atom, const ScaledKernel& kernel, const Grid& grid);

struct RegularizeOptions {
  /// Also mollify the sampled background (h_eps = h * psi_eps for regular h).
  bool mollify_background = false;
};

/// h_eps on the grid. Checks eps >= 4 dx, atom placement (>= 4 eps from
/// each boundary) and h_eps >= h0.
GridField regularize_coefficient(const SingularCoefficient& coeff, const ScaledKernel& kernel,
                                 const Grid& grid, RegularizeOptions options = {});

// Norms. The W^{1,inf} gradient uses centered differences in the interior
// and one-sided ones at DirichletZero boundaries; periodic grids wrap.
double linf_norm(const GridField& f);
double w1inf_norm(const GridField& f);

struct SobolevNorms {
  double l2 = 0.0;
  double h1 = 0.0;  // l2 + ||D f||
  double h2 = 0.0;  // l2 + ||D^2 f||, boundary rows dropped unless periodic
};
SobolevNorms sobolev_norms(const GridField& f);

/// L2 norm of the first-difference field (face-centered).
double gradient_l2(const GridField& f);
/// L2 norm of the second-difference field over interior rows.
double second_difference_l2(const GridField& f);

enum class NormKind { linf, w1inf, h1, h2 };
std::string_view to_string(NormKind kind);
double norm(const GridField& f, NormKind kind);

struct ModeratenessReport {
  NormKind kind = NormKind::w1inf;
  std::vector<double> epsilons;
  std::vector<double> norms;
  std::vector<double> min_values;
  double fitted_exponent = 0.0;  // N in ||f_eps|| ~ eps^-N
  bool positivity_violated = false;
};

/// Evaluates `net` at each eps of a geometric ladder, fits log(norm) against
/// log(eps) and reports N = -slope.
ModeratenessReport fit_moderateness(const std::function<GridField(double)>& net,
                                    std::span<const double> epsilons, NormKind kind);

ModeratenessReport fit_moderateness(const SingularCoefficient& coeff, const Grid& grid,
                                    const MollifierKernel& kernel,
                                    std::span<const double> epsilons, NormKind kind,
                                    RegularizeOptions options = {});

}  // namespace singheat
