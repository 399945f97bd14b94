#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "singheat/error.hpp"
#include "singheat/tridiagonal.hpp"

using namespace singheat;

namespace {

struct Bands {
  std::vector<double> lower, diag, upper;
};

// Diagonally dominant bands; the corners (lower[0], upper[n-1]) are filled too.
Bands random_bands(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> off(-1.0, 1.0), extra(0.1, 2.0);
  Bands b{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    b.lower[i] = off(rng);
    b.upper[i] = off(rng);
  }
  for (std::size_t i = 0; i < n; ++i)
    b.diag[i] = std::abs(b.lower[i]) + std::abs(b.upper[i]) + extra(rng);
  return b;
}

oracle::Matrix dense(const Bands& b, bool cyclic) {
  const std::size_t n = b.diag.size();
  oracle::Matrix m = oracle::zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = b.diag[i];
    if (i > 0) m[i][i - 1] = b.lower[i];
    if (i + 1 < n) m[i][i + 1] = b.upper[i];
  }
  if (cyclic) {
    m[0][n - 1] += b.lower[0];
    m[n - 1][0] += b.upper[n - 1];
  }
  return m;
}

std::vector<double> random_rhs(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("Thomas solve matches dense elimination") {
  std::mt19937_64 rng(21);
  for (std::size_t n : {1u, 2u, 3u, 8u, 33u, 200u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Bands b = random_bands(rng, n);
      const auto rhs = random_rhs(rng, n);
      const auto want = oracle::solve(dense(b, false), rhs);
      auto got = rhs;
      TridiagonalFactor(b.lower, b.diag, b.upper).solve(got);
      CHECK(oracle::max_abs_diff(want, got) <= 1e-12 * oracle::max_abs(want));
    }
  }
}

TEST_CASE("cyclic solve matches dense elimination") {
  std::mt19937_64 rng(22);
  for (std::size_t n : {3u, 4u, 9u, 64u, 255u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Bands b = random_bands(rng, n);
      const auto rhs = random_rhs(rng, n);
      const auto want = oracle::solve(dense(b, true), rhs);
      auto got = rhs;
      const CyclicTridiagonalFactor f(b.lower, b.diag, b.upper);
      f.solve(got);
      CHECK(oracle::max_abs_diff(want, got) <= 1e-12 * oracle::max_abs(want));
      // Factor is reusable.
      auto again = rhs;
      f.solve(again);
      CHECK(again == got);
    }
  }
}

TEST_CASE("singular and malformed systems are rejected") {
  const std::vector<double> ones(4, 1.0), zeros(4, 0.0);
  try {
    TridiagonalFactor(ones, zeros, ones);
    FAIL("expected singular_system");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::singular_system);
  }
  // [[1,1],[1,1]] has a zero second pivot.
  try {
    TridiagonalFactor(std::vector<double>{0, 1}, std::vector<double>{1, 1},
                      std::vector<double>{1, 0});
    FAIL("expected singular_system");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::singular_system);
  }
  CHECK_THROWS_AS(TridiagonalFactor({}, {}, {}), Error);
  CHECK_THROWS_AS(TridiagonalFactor(ones, std::vector<double>(3, 2.0), ones), Error);
  CHECK_THROWS_AS(CyclicTridiagonalFactor(std::vector<double>(2, 0.1), std::vector<double>(2, 1.0),
                                          std::vector<double>(2, 0.1)),
                  Error);
  CHECK_THROWS_AS(CyclicTridiagonalFactor(ones, zeros, ones), Error);

  TridiagonalFactor f(ones, std::vector<double>(4, 3.0), ones);
  std::vector<double> wrong(3, 1.0);
  CHECK_THROWS_AS(f.solve(wrong), Error);
}

TEST_CASE("periodic Laplacian shifted by the identity") {
  // (I - c L) with L the periodic second difference: circulant, solvable in closed form
  // for a Fourier mode: x = rhs / (1 + c * 2 (1 - cos(theta))).
  const std::size_t n = 40;
  const double c = 2.5, theta = 2.0 * 3.141592653589793 * 3 / n;
  const std::vector<double> lower(n, -c), upper(n, -c), diag(n, 1.0 + 2.0 * c);
  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = std::cos(theta * double(i));
  auto x = rhs;
  CyclicTridiagonalFactor(lower, diag, upper).solve(x);
  const double factor = 1.0 / (1.0 + c * 2.0 * (1.0 - std::cos(theta)));
  for (std::size_t i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(factor * rhs[i]).epsilon(1e-13));
}
