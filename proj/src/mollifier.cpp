#include "singheat/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "singheat/error.hpp"
#include "singheat/kernels.hpp"

namespace singheat {

namespace {

double bump(double x) noexcept {
  const double q = 1.0 - x * x;
  return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
}

double trapezoid_on_unit_interval(double (*fn)(double), std::size_t samples, double scale) {
  const double h = 2.0 / static_cast<double>(samples - 1);
  double s = 0.5 * (fn(-1.0) + fn(1.0));
  for (std::size_t i = 1; i + 1 < samples; ++i) s += fn(-1.0 + static_cast<double>(i) * h);
  return s * h * scale;
}

}  // namespace

MollifierKernel MollifierKernel::standard_bump(std::size_t samples) {
  if (samples < 3) throw Error(ErrorKind::invalid_parameter, "normalization needs >= 3 samples");
  const double raw_mass = trapezoid_on_unit_interval(bump, samples, 1.0);
  return MollifierKernel(ProfileKind::exponential_bump, samples, 1.0 / raw_mass);
}

double MollifierKernel::raw_profile(double x) const noexcept { return bump(x); }

double MollifierKernel::profile(double x) const noexcept { return scale_ * bump(x); }

double MollifierKernel::mass() const { return trapezoid_on_unit_interval(bump, samples_, scale_); }

ScaledKernel::ScaledKernel(MollifierKernel base, double epsilon) : base_(base), epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    std::ostringstream msg;
    msg << "epsilon must be positive, got " << epsilon;
    throw Error(ErrorKind::invalid_parameter, msg.str());
  }
}

std::vector<double> ScaledKernel::taps(double dx) const {
  if (epsilon_ < 4.0 * dx) {
    std::ostringstream msg;
    msg << "epsilon " << epsilon_ << " < 4*dx " << 4.0 * dx;
    throw Error(ErrorKind::under_resolved, msg.str());
  }
  // Points with |j dx| < eps; the profile vanishes at the support edge.
  const auto half = static_cast<std::size_t>(std::ceil(epsilon_ / dx)) - 1;
  std::vector<double> w(2 * half + 1);
  double sum = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double x = (static_cast<double>(k) - static_cast<double>(half)) * dx;
    w[k] = evaluate_scaled(*this, x) * dx;
    sum += w[k];
  }
  for (double& v : w) v /= sum;
  return w;
}

double evaluate_scaled(const ScaledKernel& kernel, double x) {
  const double eps = kernel.epsilon();
  return kernel.base().profile(x / eps) / eps;
}

GridField mollify_field(const GridField& f, const ScaledKernel& kernel) {
  const Grid& grid = f.grid();
  if (2.0 * kernel.epsilon() > grid.length()) {
    std::ostringstream msg;
    msg << "kernel support 2*eps = " << 2.0 * kernel.epsilon() << " exceeds domain length "
        << grid.length();
    throw Error(ErrorKind::domain_too_small, msg.str());
  }
  const std::vector<double> w = kernel.taps(grid.dx());
  const std::size_t half = w.size() / 2;
  const std::size_t m = f.size();
  const auto src = f.values();

  // Padded copy so the correlation kernel sees a contiguous window for every node.
  std::vector<double> padded(m + 2 * half);
  for (std::size_t k = 0; k < padded.size(); ++k) {
    const auto i = static_cast<std::ptrdiff_t>(k) - static_cast<std::ptrdiff_t>(half);
    const auto mm = static_cast<std::ptrdiff_t>(m);
    if (grid.boundary() == Boundary::periodic) {
      padded[k] = src[static_cast<std::size_t>(((i % mm) + mm) % mm)];
    } else {
      padded[k] = src[static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, mm - 1))];
    }
  }
  // (f * psi)(x_i) = sum_j f(x_i - y_j) psi(y_j); w is even, so correlation and convolution agree.
  std::vector<double> out(m);
  kernels::active().correlate(padded.data(), w.data(), w.size(), out.data(), m);
  return GridField(grid, std::move(out));
}

}  // namespace singheat
