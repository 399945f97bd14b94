#include "singheat/tridiagonal.hpp"

#include <cmath>

#include "singheat/error.hpp"

namespace singheat {

TridiagonalFactor::TridiagonalFactor(std::span<const double> lower, std::span<const double> diag,
                                     std::span<const double> upper)
    : lower_(lower.begin(), lower.end()), upper_(upper.begin(), upper.end()),
      inv_pivot_(diag.size()) {
  const std::size_t n = diag.size();
  if (n == 0 || lower.size() != n || upper.size() != n)
    throw Error(ErrorKind::invalid_parameter, "tridiagonal bands must have equal nonzero length");
  // Forward elimination; upper_[i] becomes the modified super-diagonal c'_i.
  double pivot = diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) pivot = diag[i] - lower_[i] * upper_[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot))
      throw Error(ErrorKind::singular_system,
                  "zero pivot in tridiagonal elimination at row " + std::to_string(i));
    inv_pivot_[i] = 1.0 / pivot;
    upper_[i] = (i + 1 < n) ? upper_[i] * inv_pivot_[i] : 0.0;
  }
}

void TridiagonalFactor::solve(std::span<double> d) const {
  const std::size_t n = inv_pivot_.size();
  if (d.size() != n) throw Error(ErrorKind::invalid_parameter, "right-hand side size mismatch");
  d[0] *= inv_pivot_[0];
  for (std::size_t i = 1; i < n; ++i) d[i] = (d[i] - lower_[i] * d[i - 1]) * inv_pivot_[i];
  for (std::size_t i = n - 1; i-- > 0;) d[i] -= upper_[i] * d[i + 1];
}

TridiagonalFactor CyclicTridiagonalFactor::reduced(std::span<const double> lower,
                                                   std::span<const double> diag,
                                                   std::span<const double> upper, double gamma) {
  std::vector<double> d(diag.begin(), diag.end());
  const std::size_t n = d.size();
  if (n < 3 || lower.size() != n || upper.size() != n)
    throw Error(ErrorKind::invalid_parameter, "cyclic system needs >= 3 rows and equal bands");
  if (gamma == 0.0) throw Error(ErrorKind::singular_system, "zero leading diagonal entry");
  d[0] -= gamma;
  d[n - 1] -= upper[n - 1] * lower[0] / gamma;
  return TridiagonalFactor(lower, d, upper);
}

CyclicTridiagonalFactor::CyclicTridiagonalFactor(std::span<const double> lower,
                                                 std::span<const double> diag,
                                                 std::span<const double> upper)
    : gamma_(diag.empty() ? 0.0 : -diag[0]),
      corner_lower_(lower.empty() ? 0.0 : lower[0]),
      corner_upper_(upper.empty() ? 0.0 : upper[upper.size() - 1]),
      base_(reduced(lower, diag, upper, gamma_)),
      z_(diag.size(), 0.0),
      z_denominator_(0.0) {
  const std::size_t n = diag.size();
  // A = B + u v^T with u = (gamma, 0, ..., corner_upper), v = (1, 0, ..., corner_lower/gamma)
  z_[0] = gamma_;
  z_[n - 1] = corner_upper_;
  base_.solve(z_);
  z_denominator_ = 1.0 + z_[0] + corner_lower_ * z_[n - 1] / gamma_;
  if (z_denominator_ == 0.0 || !std::isfinite(z_denominator_))
    throw Error(ErrorKind::singular_system, "singular cyclic tridiagonal system");
}

void CyclicTridiagonalFactor::solve(std::span<double> rhs) const {
  const std::size_t n = rhs.size();
  if (n != z_.size()) throw Error(ErrorKind::invalid_parameter, "right-hand side size mismatch");
  base_.solve(rhs);
  const double fact = (rhs[0] + corner_lower_ * rhs[n - 1] / gamma_) / z_denominator_;
  for (std::size_t i = 0; i < n; ++i) rhs[i] -= fact * z_[i];
}

}  // namespace singheat
