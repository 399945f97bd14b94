#include "singheat/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "singheat/error.hpp"
#include "singheat/fitting.hpp"
#include "singheat/kernels.hpp"

namespace singheat {

double Background::operator()(double x) const {
  switch (kind) {
    case Kind::constant: return value;
    case Kind::affine: return value + slope * x;
    case Kind::sinusoid: return value + amplitude * std::sin(frequency * x + phase);
  }
  return value;
}

std::string_view to_string(AtomKind kind) {
  switch (kind) {
    case AtomKind::dirac_delta: return "delta";
    case AtomKind::dirac_delta_squared: return "delta2";
    case AtomKind::jump: return "jump";
  }
  return "unknown";
}

SingularCoefficient::SingularCoefficient(Background background, double h0,
                                         std::vector<SingularAtom> atoms)
    : background_(background), h0_(h0), atoms_(std::move(atoms)) {
  if (!(h0 > 0.0)) {
    std::ostringstream msg;
    msg << "floor h0 must be positive, got " << h0;
    throw Error(ErrorKind::invalid_parameter, msg.str());
  }
  for (const auto& atom : atoms_) {
    if (!(atom.weight >= 0.0) || !std::isfinite(atom.weight)) {
      std::ostringstream msg;
      msg << to_string(atom.kind) << " atom at " << atom.location
          << " needs a finite nonnegative weight, got " << atom.weight;
      throw Error(ErrorKind::invalid_parameter, msg.str());
    }
    if (atom.kind == AtomKind::jump && !(atom.left >= 0.0 && atom.right >= 0.0)) {
      std::ostringstream msg;
      msg << "jump atom at " << atom.location << " needs nonnegative values, got " << atom.left
          << ", " << atom.right;
      throw Error(ErrorKind::invalid_parameter, msg.str());
    }
  }
}

GridField regularize_atom(const SingularAtom& atom, const ScaledKernel& kernel, const Grid& grid) {
  const double eps = kernel.epsilon();
  switch (atom.kind) {
    case AtomKind::dirac_delta:
      return GridField::sample(grid, [&](double x) {
        return atom.weight * evaluate_scaled(kernel, x - atom.location);
      });
    case AtomKind::dirac_delta_squared:
      return GridField::sample(grid, [&](double x) {
        const double p = kernel.base().profile((x - atom.location) / eps);
        return atom.weight * p * p / (eps * eps);
      });
    case AtomKind::jump: {
      const GridField step = GridField::sample(grid, [&](double x) {
        if (x < atom.location) return atom.weight * atom.left;
        if (x > atom.location) return atom.weight * atom.right;
        return 0.5 * atom.weight * (atom.left + atom.right);
      });
      return mollify_field(step, kernel);
    }
  }
  return GridField(grid);
}

GridField regularize_coefficient(const SingularCoefficient& coeff, const ScaledKernel& kernel,
                                 const Grid& grid, RegularizeOptions options) {
  const double eps = kernel.epsilon();
  if (eps > 1.0) {
    std::ostringstream msg;
    msg << "epsilon " << eps << " outside (0, 1]";
    throw Error(ErrorKind::invalid_parameter, msg.str());
  }
  if (eps < min_epsilon(grid)) {
    std::ostringstream msg;
    msg << "epsilon " << eps << " < 4*dx " << min_epsilon(grid);
    throw Error(ErrorKind::under_resolved, msg.str());
  }
  for (const auto& atom : coeff.atoms()) {
    const double margin = std::min(atom.location - grid.a(), grid.b() - atom.location);
    if (margin < 4.0 * eps) {
      std::ostringstream msg;
      msg << to_string(atom.kind) << " atom at " << atom.location << " is " << margin
          << " from the boundary; needs >= 4*eps = " << 4.0 * eps;
      throw Error(ErrorKind::placement, msg.str());
    }
  }

  GridField h = GridField::sample(grid, coeff.background());
  if (h.min() < coeff.h0()) {
    std::ostringstream msg;
    msg << "background drops to " << h.min() << " below floor h0 = " << coeff.h0();
    throw Error(ErrorKind::positivity, msg.str());
  }
  if (options.mollify_background) h = mollify_field(h, kernel);
  for (const auto& atom : coeff.atoms()) h += regularize_atom(atom, kernel, grid);

  // Averaging with nonnegative weights cannot go below h0 except by roundoff.
  if (h.min() < coeff.h0() * (1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << "regularized coefficient min " << h.min() << " below floor h0 = " << coeff.h0();
    throw Error(ErrorKind::positivity, msg.str());
  }
  return h;
}

double linf_norm(const GridField& f) { return kernels::max_abs(f.values()); }

double w1inf_norm(const GridField& f) {
  const Grid& grid = f.grid();
  const auto v = f.values();
  const std::size_t m = v.size();
  if (m < 3) throw Error(ErrorKind::invalid_parameter, "W^{1,inf} norm needs >= 3 points");
  const double dx = grid.dx();
  double grad = kernels::active().max_abs_centered_diff(v.data(), m) / (2.0 * dx);
  if (grid.boundary() == Boundary::periodic) {
    grad = std::max(grad, std::abs(v[1] - v[m - 1]) / (2.0 * dx));
    grad = std::max(grad, std::abs(v[0] - v[m - 2]) / (2.0 * dx));
  } else {
    grad = std::max(grad, std::abs(v[1] - v[0]) / dx);
    grad = std::max(grad, std::abs(v[m - 1] - v[m - 2]) / dx);
  }
  return linf_norm(f) + grad;
}

double gradient_l2(const GridField& f) {
  const auto v = f.values();
  const std::size_t m = v.size();
  const double dx = f.grid().dx();
  // weights of one give plain squared differences
  std::vector<double> ones(m, 1.0);
  double s = kernels::active().weighted_diff_squares(ones.data(), v.data(), m - 1);
  if (f.grid().boundary() == Boundary::periodic) {
    const double d = v[0] - v[m - 1];
    s += d * d;
  }
  return std::sqrt(s / dx);
}

double second_difference_l2(const GridField& f) {
  const auto v = f.values();
  const std::size_t m = v.size();
  const double dx = f.grid().dx();
  double s = kernels::active().second_diff_squares(v.data(), m);
  if (f.grid().boundary() == Boundary::periodic) {
    const double d0 = v[1] - 2.0 * v[0] + v[m - 1];
    const double d1 = v[0] - 2.0 * v[m - 1] + v[m - 2];
    s += d0 * d0 + d1 * d1;
  }
  return std::sqrt(s / (dx * dx * dx));
}

SobolevNorms sobolev_norms(const GridField& f) {
  if (f.size() < 5) throw Error(ErrorKind::invalid_parameter, "Sobolev norms need >= 5 points");
  SobolevNorms n;
  n.l2 = l2_norm(f);
  n.h1 = n.l2 + gradient_l2(f);
  n.h2 = n.l2 + second_difference_l2(f);
  return n;
}

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::linf: return "Linf";
    case NormKind::w1inf: return "W1inf";
    case NormKind::h1: return "H1";
    case NormKind::h2: return "H2";
  }
  return "unknown";
}

double norm(const GridField& f, NormKind kind) {
  switch (kind) {
    case NormKind::linf: return linf_norm(f);
    case NormKind::w1inf: return w1inf_norm(f);
    case NormKind::h1: return sobolev_norms(f).h1;
    case NormKind::h2: return sobolev_norms(f).h2;
  }
  return 0.0;
}

ModeratenessReport fit_moderateness(const std::function<GridField(double)>& net,
                                    std::span<const double> epsilons, NormKind kind) {
  validate_ladder(epsilons, 4);
  ModeratenessReport report;
  report.kind = kind;
  report.epsilons.assign(epsilons.begin(), epsilons.end());
  for (double eps : epsilons) {
    const GridField f = net(eps);
    report.norms.push_back(norm(f, kind));
    report.min_values.push_back(f.min());
    if (!(f.min() > 0.0)) report.positivity_violated = true;
  }
  report.fitted_exponent = -fit_loglog(report.epsilons, report.norms).slope;
  return report;
}

ModeratenessReport fit_moderateness(const SingularCoefficient& coeff, const Grid& grid,
                                    const MollifierKernel& kernel,
                                    std::span<const double> epsilons, NormKind kind,
                                    RegularizeOptions options) {
  return fit_moderateness(
      [&](double eps) {
        return regularize_coefficient(coeff, ScaledKernel(kernel, eps), grid, options);
      },
      epsilons, kind);
}

}  // namespace singheat
