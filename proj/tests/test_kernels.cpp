#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "singheat/error.hpp"
#include "singheat/kernels.hpp"

using namespace singheat;
namespace k = singheat::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0,
                                  double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// Reductions may reassociate; allow a few ulps of the magnitude summed.
void check_close(double got, double want, double magnitude) {
  CHECK(std::abs(got - want) <= 1e-13 * std::max(1.0, magnitude));
}

const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 65, 257, 1000};

}  // namespace

TEST_CASE("scalar variant is always available and listed first") {
  const auto isas = k::available();
  REQUIRE_FALSE(isas.empty());
  CHECK(isas.front() == k::Isa::scalar);
  CHECK(k::supported(k::Isa::scalar));
  CHECK(k::name(k::Isa::scalar) == "scalar");
  CHECK(k::name(k::Isa::avx2) == "avx2");
  CHECK(k::name(k::Isa::neon) == "neon");
}

TEST_CASE("unsupported variant is rejected") {
  for (auto isa : {k::Isa::avx2, k::Isa::neon}) {
    if (k::supported(isa)) continue;
    CHECK_THROWS_AS(k::table(isa), Error);
    CHECK_THROWS_AS(k::select(isa), Error);
  }
}

TEST_CASE("select pins the dispatched table") {
  const k::Isa before = k::active().isa;
  for (auto isa : k::available()) {
    k::select(isa);
    CHECK(k::active().isa == isa);
  }
  k::select(before);
  CHECK(k::best_available() == k::available().back());
}

TEST_CASE("SIMD reductions match the scalar reference") {
  std::mt19937_64 rng(11);
  const auto& ref = k::table(k::Isa::scalar);
  for (auto isa : k::available()) {
    const auto& t = k::table(isa);
    CAPTURE(k::name(isa));
    for (std::size_t n : kSizes) {
      CAPTURE(n);
      const auto a = random_vector(rng, n);
      const auto b = random_vector(rng, n);
      const auto w = random_vector(rng, n, 0.5, 3.0);
      check_close(t.dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n), double(n));
      check_close(t.sum_squares(a.data(), n), ref.sum_squares(a.data(), n), double(n));
      CHECK(t.max_abs(a.data(), n) == ref.max_abs(a.data(), n));
      if (n >= 1) {
        check_close(t.weighted_diff_squares(w.data(), a.data(), n - 1),
                    ref.weighted_diff_squares(w.data(), a.data(), n - 1), 12.0 * double(n));
      }
      check_close(t.second_diff_squares(a.data(), n), ref.second_diff_squares(a.data(), n),
                  16.0 * double(n));
      CHECK(t.max_abs_centered_diff(a.data(), n) == ref.max_abs_centered_diff(a.data(), n));
    }
  }
}

TEST_CASE("SIMD divergence matches the scalar reference and leaves the ends alone") {
  std::mt19937_64 rng(12);
  const auto& ref = k::table(k::Isa::scalar);
  for (auto isa : k::available()) {
    const auto& t = k::table(isa);
    CAPTURE(k::name(isa));
    for (std::size_t n : kSizes) {
      if (n < 3) continue;
      CAPTURE(n);
      const auto v = random_vector(rng, n);
      const auto f = random_vector(rng, n - 1, 1.0, 5.0);
      std::vector<double> want(n, 7.0), got(n, 7.0);
      ref.divergence(f.data(), v.data(), want.data(), n, 3.5);
      t.divergence(f.data(), v.data(), got.data(), n, 3.5);
      CHECK(got.front() == 7.0);
      CHECK(got.back() == 7.0);
      for (std::size_t i = 0; i < n; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("SIMD correlate is bitwise equal to the scalar reference") {
  std::mt19937_64 rng(13);
  const auto& ref = k::table(k::Isa::scalar);
  for (auto isa : k::available()) {
    const auto& t = k::table(isa);
    CAPTURE(k::name(isa));
    for (std::size_t taps : {1u, 3u, 9u, 17u, 41u}) {
      for (std::size_t n_out : {0u, 1u, 5u, 8u, 13u, 100u}) {
        const auto src = random_vector(rng, n_out + taps);
        const auto w = random_vector(rng, taps, 0.0, 1.0);
        std::vector<double> want(n_out), got(n_out);
        ref.correlate(src.data(), w.data(), taps, want.data(), n_out);
        t.correlate(src.data(), w.data(), taps, got.data(), n_out);
        CHECK(got == want);
      }
    }
  }
}

TEST_CASE("scalar kernels on hand-checked inputs") {
  const auto& s = k::table(k::Isa::scalar);
  const double a[] = {1, -2, 3, -4};
  const double b[] = {2, 2, 2, 2};
  CHECK(s.dot(a, b, 4) == -4.0);
  CHECK(s.sum_squares(a, 4) == 30.0);
  CHECK(s.max_abs(a, 4) == 4.0);
  // faces: (a1-a0)^2 = 9, (a2-a1)^2 = 25, (a3-a2)^2 = 49
  CHECK(s.weighted_diff_squares(b, a, 3) == 2.0 * (9 + 25 + 49));
  // rows 1, 2: (3 + 4 + 1) = 8 -> 64, (-4 - 6 - 2) = -12 -> 144
  CHECK(s.second_diff_squares(a, 4) == 64.0 + 144.0);
  CHECK(s.max_abs_centered_diff(a, 4) == 2.0);
  CHECK(s.second_diff_squares(a, 2) == 0.0);
  CHECK(s.max_abs(a, 0) == 0.0);
}
