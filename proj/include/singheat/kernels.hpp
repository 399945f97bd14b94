#pragma once

// Inner loops shared by the grid operator, the mollifier and the norms.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2 (x86-64) or NEON (aarch64) variant.  The variant is
// chosen once at startup from the CPU feature flags; tests can pin a variant
// with select() and compare it against the scalar reference.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace singheat::kernels {

enum class Isa { scalar, avx2, neon };

struct Table {
  Isa isa;

  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_squares)(const double* a, std::size_t n);
  double (*max_abs)(const double* a, std::size_t n);

  // sum_i w[i] * (u[i+1] - u[i])^2 for i < faces
  double (*weighted_diff_squares)(const double* w, const double* u, std::size_t faces);
  // sum over i in [1, n-2] of (u[i+1] - 2u[i] + u[i-1])^2
  double (*second_diff_squares)(const double* u, std::size_t n);
  // max over i in [1, n-2] of |u[i+1] - u[i-1]|
  double (*max_abs_centered_diff)(const double* u, std::size_t n);

  // out[i] = scale * (f[i] (v[i+1] - v[i]) - f[i-1] (v[i] - v[i-1])) for i in [1, n-2].
  // out[0] and out[n-1] are left untouched.
  void (*divergence)(const double* faces, const double* v, double* out, std::size_t n,
                     double scale);

  // out[i] = sum_j w[j] * src[i + j] for i < n_out, j < taps
  void (*correlate)(const double* src, const double* w, std::size_t taps, double* out,
                    std::size_t n_out);
};

std::string_view name(Isa isa);

// Variants compiled into this binary and usable on this CPU; scalar is always first.
std::vector<Isa> available();
bool supported(Isa isa);

// Table for a specific variant. Throws singheat::Error if unsupported.
const Table& table(Isa isa);

// The dispatched table. Thread-safe to read; select() is meant for startup and tests.
const Table& active();
void select(Isa isa);
Isa best_available();

namespace detail {
extern const Table scalar_table;
#if defined(SINGHEAT_HAVE_AVX2)
extern const Table avx2_table;
#endif
#if defined(SINGHEAT_HAVE_NEON)
extern const Table neon_table;
#endif
}  // namespace detail

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline double sum_squares(std::span<const double> a) {
  return active().sum_squares(a.data(), a.size());
}
inline double max_abs(std::span<const double> a) { return active().max_abs(a.data(), a.size()); }

}  // namespace singheat::kernels
