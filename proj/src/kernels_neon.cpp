// NEON variants, 2 doubles per lane. Only built for aarch64 targets.

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "singheat/kernels.hpp"

namespace singheat::kernels {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_squares(const double* a, std::size_t n) { return dot(a, a, n); }

double max_abs(const double* a, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(a + i)));
  double r = vmaxvq_f64(m);
  for (; i < n; ++i) r = std::max(r, std::abs(a[i]));
  return r;
}

double weighted_diff_squares(const double* w, const double* u, std::size_t faces) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= faces; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(u + i + 1), vld1q_f64(u + i));
    acc = vfmaq_f64(acc, vmulq_f64(vld1q_f64(w + i), d), d);
  }
  double s = vaddvq_f64(acc);
  for (; i < faces; ++i) {
    const double d = u[i + 1] - u[i];
    s += w[i] * d * d;
  }
  return s;
}

double second_diff_squares(const double* u, std::size_t n) {
  if (n < 3) return 0.0;
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 1;
  for (; i + 2 < n; i += 2) {
    const float64x2_t c = vld1q_f64(u + i);
    const float64x2_t d =
        vaddq_f64(vfmsq_f64(vld1q_f64(u + i + 1), vdupq_n_f64(2.0), c), vld1q_f64(u + i - 1));
    acc = vfmaq_f64(acc, d, d);
  }
  double s = vaddvq_f64(acc);
  for (; i + 1 < n; ++i) {
    const double d = u[i + 1] - 2.0 * u[i] + u[i - 1];
    s += d * d;
  }
  return s;
}

double max_abs_centered_diff(const double* u, std::size_t n) {
  if (n < 3) return 0.0;
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 1;
  for (; i + 2 < n; i += 2)
    m = vmaxq_f64(m, vabsq_f64(vsubq_f64(vld1q_f64(u + i + 1), vld1q_f64(u + i - 1))));
  double r = vmaxvq_f64(m);
  for (; i + 1 < n; ++i) r = std::max(r, std::abs(u[i + 1] - u[i - 1]));
  return r;
}

void divergence(const double* f, const double* v, double* out, std::size_t n, double scale) {
  if (n < 3) return;
  const float64x2_t s = vdupq_n_f64(scale);
  std::size_t i = 1;
  for (; i + 2 < n; i += 2) {
    const float64x2_t vc = vld1q_f64(v + i);
    const float64x2_t right = vmulq_f64(vld1q_f64(f + i), vsubq_f64(vld1q_f64(v + i + 1), vc));
    const float64x2_t left = vmulq_f64(vld1q_f64(f + i - 1), vsubq_f64(vc, vld1q_f64(v + i - 1)));
    vst1q_f64(out + i, vmulq_f64(s, vsubq_f64(right, left)));
  }
  for (; i + 1 < n; ++i)
    out[i] = scale * (f[i] * (v[i + 1] - v[i]) - f[i - 1] * (v[i] - v[i - 1]));
}

// No FMA, to round like the scalar loop.
void correlate(const double* src, const double* w, std::size_t taps, double* out,
               std::size_t n_out) {
  std::size_t i = 0;
  for (; i + 2 <= n_out; i += 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t j = 0; j < taps; ++j)
      acc = vaddq_f64(acc, vmulq_n_f64(vld1q_f64(src + i + j), w[j]));
    vst1q_f64(out + i, acc);
  }
  for (; i < n_out; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < taps; ++j) s += w[j] * src[i + j];
    out[i] = s;
  }
}

}  // namespace

namespace detail {
const Table neon_table{
    Isa::neon,           dot,        sum_squares, max_abs, weighted_diff_squares,
    second_diff_squares, max_abs_centered_diff,   divergence, correlate,
};
}  // namespace detail

}  // namespace singheat::kernels
