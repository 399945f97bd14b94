// AVX2/FMA variants, 4 doubles per lane. Compiled with -mavx2 -mfma and only
// reached through the dispatcher after a CPUID check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "singheat/kernels.hpp"

namespace singheat::kernels {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

inline __m256d vabs(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_squares(const double* a, std::size_t n) { return dot(a, a, n); }

double max_abs(const double* a, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, vabs(_mm256_loadu_pd(a + i)));
  double r = hmax(m);
  for (; i < n; ++i) r = std::max(r, std::abs(a[i]));
  return r;
}

double weighted_diff_squares(const double* w, const double* u, std::size_t faces) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= faces; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(u + i + 1), _mm256_loadu_pd(u + i));
    acc = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i), d), d, acc);
  }
  double s = hsum(acc);
  for (; i < faces; ++i) {
    const double d = u[i + 1] - u[i];
    s += w[i] * d * d;
  }
  return s;
}

double second_diff_squares(const double* u, std::size_t n) {
  if (n < 3) return 0.0;
  const __m256d two = _mm256_set1_pd(2.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 1;
  for (; i + 4 < n; i += 4) {
    const __m256d c = _mm256_loadu_pd(u + i);
    const __m256d d = _mm256_add_pd(_mm256_fnmadd_pd(two, c, _mm256_loadu_pd(u + i + 1)),
                                    _mm256_loadu_pd(u + i - 1));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double s = hsum(acc);
  for (; i + 1 < n; ++i) {
    const double d = u[i + 1] - 2.0 * u[i] + u[i - 1];
    s += d * d;
  }
  return s;
}

double max_abs_centered_diff(const double* u, std::size_t n) {
  if (n < 3) return 0.0;
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 1;
  for (; i + 4 < n; i += 4)
    m = _mm256_max_pd(m, vabs(_mm256_sub_pd(_mm256_loadu_pd(u + i + 1),
                                            _mm256_loadu_pd(u + i - 1))));
  double r = hmax(m);
  for (; i + 1 < n; ++i) r = std::max(r, std::abs(u[i + 1] - u[i - 1]));
  return r;
}

void divergence(const double* f, const double* v, double* out, std::size_t n, double scale) {
  if (n < 3) return;
  const __m256d s = _mm256_set1_pd(scale);
  std::size_t i = 1;
  for (; i + 4 < n; i += 4) {
    const __m256d vc = _mm256_loadu_pd(v + i);
    const __m256d right = _mm256_mul_pd(_mm256_loadu_pd(f + i),
                                        _mm256_sub_pd(_mm256_loadu_pd(v + i + 1), vc));
    const __m256d left = _mm256_mul_pd(_mm256_loadu_pd(f + i - 1),
                                       _mm256_sub_pd(vc, _mm256_loadu_pd(v + i - 1)));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(s, _mm256_sub_pd(right, left)));
  }
  for (; i + 1 < n; ++i)
    out[i] = scale * (f[i] * (v[i + 1] - v[i]) - f[i - 1] * (v[i] - v[i - 1]));
}

// Vectorized across outputs: each lane accumulates one output over the taps
// in the same order as the scalar loop.
// Separate multiply and add (no FMA) so each output rounds exactly like the
// scalar loop; mollified fields are then identical on every variant.
void correlate(const double* src, const double* w, std::size_t taps, double* out,
               std::size_t n_out) {
  std::size_t i = 0;
  for (; i + 8 <= n_out; i += 8) {
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    for (std::size_t j = 0; j < taps; ++j) {
      const __m256d wj = _mm256_broadcast_sd(w + j);
      a0 = _mm256_add_pd(a0, _mm256_mul_pd(wj, _mm256_loadu_pd(src + i + j)));
      a1 = _mm256_add_pd(a1, _mm256_mul_pd(wj, _mm256_loadu_pd(src + i + j + 4)));
    }
    _mm256_storeu_pd(out + i, a0);
    _mm256_storeu_pd(out + i + 4, a1);
  }
  for (; i + 4 <= n_out; i += 4) {
    __m256d a0 = _mm256_setzero_pd();
    for (std::size_t j = 0; j < taps; ++j)
      a0 = _mm256_add_pd(a0, _mm256_mul_pd(_mm256_broadcast_sd(w + j), _mm256_loadu_pd(src + i + j)));
    _mm256_storeu_pd(out + i, a0);
  }
  for (; i < n_out; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < taps; ++j) s += w[j] * src[i + j];
    out[i] = s;
  }
}

}  // namespace

namespace detail {
const Table avx2_table{
    Isa::avx2,           dot,        sum_squares, max_abs, weighted_diff_squares,
    second_diff_squares, max_abs_centered_diff,   divergence, correlate,
};
}  // namespace detail

}  // namespace singheat::kernels
