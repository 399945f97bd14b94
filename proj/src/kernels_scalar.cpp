// Scalar reference kernels. These define the semantics the SIMD variants are
// tested against; keep them plain.

#include <algorithm>
#include <cmath>

#include "singheat/kernels.hpp"

namespace singheat::kernels {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_squares(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

double max_abs(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

double weighted_diff_squares(const double* w, const double* u, std::size_t faces) {
  double s = 0.0;
  for (std::size_t i = 0; i < faces; ++i) {
    const double d = u[i + 1] - u[i];
    s += w[i] * d * d;
  }
  return s;
}

double second_diff_squares(const double* u, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d = u[i + 1] - 2.0 * u[i] + u[i - 1];
    s += d * d;
  }
  return s;
}

double max_abs_centered_diff(const double* u, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) m = std::max(m, std::abs(u[i + 1] - u[i - 1]));
  return m;
}

void divergence(const double* f, const double* v, double* out, std::size_t n, double scale) {
  for (std::size_t i = 1; i + 1 < n; ++i)
    out[i] = scale * (f[i] * (v[i + 1] - v[i]) - f[i - 1] * (v[i] - v[i - 1]));
}

void correlate(const double* src, const double* w, std::size_t taps, double* out,
               std::size_t n_out) {
  for (std::size_t i = 0; i < n_out; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < taps; ++j) s += w[j] * src[i + j];
    out[i] = s;
  }
}

}  // namespace

namespace detail {
const Table scalar_table{
    Isa::scalar,           dot,        sum_squares, max_abs, weighted_diff_squares,
    second_diff_squares,   max_abs_centered_diff,   divergence, correlate,
};
}  // namespace detail

}  // namespace singheat::kernels
