#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "singheat/error.hpp"
#include "singheat/solver.hpp"

using namespace singheat;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::io;
}

std::vector<double> faces_of(const DiffusionOperator& op) {
  return {op.faces().begin(), op.faces().end()};
}

GridField constant(const Grid& g, double c) {
  return GridField::sample(g, [c](double) { return c; });
}

double mass(const GridField& u) {
  double s = 0.0;
  for (double v : u.values()) s += v * u.grid().dx();
  return s;
}

// Relative L2 error at T of the periodic sine mode with h = 1.
double mode_error(std::size_t n, double dt, Scheme scheme) {
  const double T = 0.1;
  const Grid g(0.0, 1.0, n, Boundary::periodic);
  const double k = 2.0 * std::numbers::pi;
  const auto op = DiffusionOperator::build(constant(g, 1.0));
  const GridField u0 = GridField::sample(g, [&](double x) { return std::sin(k * x); });
  const auto traj = solve(u0, op, SolveConfig::uniform(T, dt, scheme, 1));
  const GridField exact = std::exp(-k * k * T) * u0;
  return l2_norm(traj.final() - exact) / l2_norm(exact);
}

}  // namespace

TEST_CASE("one step matches a dense solve at n = 32") {
  std::mt19937_64 rng(61);
  for (auto boundary : {Boundary::dirichlet_zero, Boundary::periodic}) {
    for (auto scheme : {Scheme::implicit_euler, Scheme::crank_nicolson}) {
      for (int trial = 0; trial < 10; ++trial) {
        const Grid g(0.0, 1.0, 32, boundary);
        const auto op = DiffusionOperator::build(oracle::random_smooth_h(g, rng));
        const GridField u = oracle::random_field(g, rng);
        const double dt = 1e-3 * (1 + trial);
        const auto a = oracle::diffusion_matrix(g, faces_of(op));
        const auto id = oracle::identity(g.size());
        std::vector<double> rhs(u.values().begin(), u.values().end());
        std::vector<double> want;
        if (scheme == Scheme::implicit_euler) {
          want = oracle::solve(oracle::combine(1.0, id, -dt, a), rhs);
        } else {
          rhs = oracle::multiply(oracle::combine(1.0, id, dt / 2, a), rhs);
          want = oracle::solve(oracle::combine(1.0, id, -dt / 2, a), rhs);
        }
        const GridField got = step(u, op, dt, scheme);
        CHECK(oracle::max_abs_diff(want, got.values()) <= 1e-12 * oracle::max_abs(want));
      }
    }
  }
}

TEST_CASE("implicit Euler damps a periodic mode by the discrete symbol") {
  const double c = 1.3, dt = 2e-3;
  const Grid g(-1.0, 1.0, 129, Boundary::periodic);
  const double k = 2.0 * std::numbers::pi * 3 / g.length();
  const auto op = DiffusionOperator::build(constant(g, c));
  const GridField u = GridField::sample(g, [&](double x) { return std::sin(k * x); });
  const double symbol = 2.0 * (1.0 - std::cos(k * g.dx())) / (g.dx() * g.dx());
  const GridField want = (1.0 / (1.0 + dt * c * symbol)) * u;
  const GridField got = step(u, op, dt, Scheme::implicit_euler);
  CHECK(oracle::max_abs_diff({want.values().begin(), want.values().end()}, got.values()) <=
        1e-12);
}

TEST_CASE("constant periodic field is a steady state") {
  std::mt19937_64 rng(62);
  const Grid g(0.0, 1.0, 100, Boundary::periodic);
  const auto op = DiffusionOperator::build(oracle::random_smooth_h(g, rng));
  const GridField u = constant(g, 0.75);
  for (auto scheme : {Scheme::implicit_euler, Scheme::crank_nicolson}) {
    const GridField v = step(u, op, 0.05, scheme);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(v[i] - 0.75) <= 1e-13);
  }
}

TEST_CASE("zero data stays zero") {
  const Grid g(-1.0, 1.0, 65);
  std::mt19937_64 rng(63);
  const auto op = DiffusionOperator::build(oracle::random_smooth_h(g, rng));
  const auto traj = solve(GridField(g), op, SolveConfig::uniform(0.1, 0.01, Scheme::implicit_euler, 5));
  REQUIRE(traj.snapshots.size() == 6);
  for (const auto& s : traj.snapshots) CHECK(s.u == GridField(g));
}

TEST_CASE("sine mode with h = 1 matches the exact solution") {
  CHECK(mode_error(513, 1e-4, Scheme::crank_nicolson) <= 1e-4);
}

TEST_CASE("L2 norm never increases") {
  std::mt19937_64 rng(64);
  std::uniform_real_distribution<double> dts(1e-4, 0.5);
  for (auto boundary : {Boundary::dirichlet_zero, Boundary::periodic}) {
    for (auto scheme : {Scheme::implicit_euler, Scheme::crank_nicolson}) {
      for (int trial = 0; trial < 10; ++trial) {
        const Grid g(0.0, 1.0, 96, boundary);
        const auto op = DiffusionOperator::build(oracle::random_smooth_h(g, rng, 0.1));
        const GridField u0 = oracle::random_field(g, rng);
        const double dt = dts(rng);
        const auto traj = solve(u0, op, SolveConfig::uniform(20 * dt, dt, scheme, 20));
        const double tol = 1e-12 * l2_norm(u0);
        for (std::size_t m = 1; m < traj.snapshots.size(); ++m)
          CHECK(l2_norm(traj.snapshots[m].u) <= l2_norm(traj.snapshots[m - 1].u) + tol);
      }
    }
  }
}

TEST_CASE("implicit Euler keeps the Dirichlet maximum principle") {
  std::mt19937_64 rng(65);
  std::uniform_real_distribution<double> dts(1e-5, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Grid g(-1.0, 1.0, 80);
    const auto op = DiffusionOperator::build(oracle::random_smooth_h(g, rng, 0.01));
    const GridField u0 = oracle::random_field(g, rng);
    const double lo = std::min(0.0, u0.min()) - 1e-10, hi = std::max(0.0, u0.max()) + 1e-10;
    const double dt = dts(rng);
    const auto traj = solve(u0, op, SolveConfig::uniform(10 * dt, dt, Scheme::implicit_euler, 10));
    for (const auto& s : traj.snapshots) {
      CHECK(s.u.min() >= lo);
      CHECK(s.u.max() <= hi);
    }
  }
}

TEST_CASE("periodic solves conserve mass") {
  std::mt19937_64 rng(66);
  for (auto scheme : {Scheme::implicit_euler, Scheme::crank_nicolson}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Grid g(0.0, 2.0, 128, Boundary::periodic);
      const auto op = DiffusionOperator::build(oracle::random_smooth_h(g, rng));
      const GridField u0 = oracle::random_field(g, rng) + constant(g, 0.5);
      const auto traj = solve(u0, op, SolveConfig::uniform(0.5, 0.01, scheme, 10));
      const double m0 = mass(u0);
      for (const auto& s : traj.snapshots) CHECK(std::abs(mass(s.u) - m0) <= 1e-10 * std::abs(m0));
    }
  }
}

TEST_CASE("two-grid convergence orders") {
  const double cn = mode_error(65, 0.1 / 40, Scheme::crank_nicolson) /
                    mode_error(129, 0.1 / 80, Scheme::crank_nicolson);
  CHECK(cn >= 3.5);
  // dt-dominated: the spatial error is negligible on these grids.
  const double ie = mode_error(257, 0.1 / 10, Scheme::implicit_euler) /
                    mode_error(513, 0.1 / 20, Scheme::implicit_euler);
  CHECK(ie >= 1.8);
}

TEST_CASE("zero forcing reproduces the homogeneous solve") {
  std::mt19937_64 rng(67);
  for (auto scheme : {Scheme::implicit_euler, Scheme::crank_nicolson}) {
    const Grid g(0.0, 1.0, 50);
    const auto op = DiffusionOperator::build(oracle::random_smooth_h(g, rng));
    const GridField u0 = oracle::random_field(g, rng);
    const auto cfg = SolveConfig::uniform(0.2, 0.01, scheme, 4);
    const auto a = solve(u0, op, cfg);
    const auto b = solve_with_forcing(u0, op, cfg, [](double, std::span<double> out) {
      std::fill(out.begin(), out.end(), 0.0);
    });
    REQUIRE(a.snapshots.size() == b.snapshots.size());
    for (std::size_t m = 0; m < a.snapshots.size(); ++m) CHECK(a.snapshots[m].u == b.snapshots[m].u);
  }
}

TEST_CASE("with A = 0 a constant forcing integrates exactly") {
  const Grid g(0.0, 1.0, 40, Boundary::periodic);
  const auto op = DiffusionOperator::from_faces(g, std::vector<double>(g.faces(), 0.0));
  std::mt19937_64 rng(68);
  const GridField u0 = oracle::random_field(g, rng);
  const GridField f = oracle::random_field(g, rng);
  const double T = 0.37;
  for (auto scheme : {Scheme::implicit_euler, Scheme::crank_nicolson}) {
    const auto traj = solve_with_forcing(u0, op, SolveConfig::uniform(T, T / 37, scheme, 1),
                                         [&](double, std::span<double> out) {
                                           std::copy(f.values().begin(), f.values().end(), out.begin());
                                         });
    const GridField want = u0 + T * f;
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(traj.final()[i] - want[i]) <= 1e-12);
  }
}

TEST_CASE("forced solve agrees with Duhamel superposition at n = 64") {
  const Grid g(0.0, 1.0, 64);
  std::mt19937_64 rng(69);
  const auto op = DiffusionOperator::build(oracle::random_smooth_h(g, rng));
  const GridField shape = GridField::sample(g, [](double x) { return std::sin(std::numbers::pi * x) * (1 + x); });
  const GridField u0 = GridField::sample(g, [](double x) { return std::sin(2 * std::numbers::pi * x); });
  auto f = [&](double t) { return std::cos(3.0 * t) * shape; };
  const double T = 0.2, dt = 1e-4;
  const auto forced = solve_with_forcing(
      u0, op, SolveConfig::uniform(T, dt, Scheme::crank_nicolson, 1),
      [&](double t, std::span<double> out) {
        const GridField v = f(t);
        std::copy(v.values().begin(), v.values().end(), out.begin());
      });

  // U(T) = V(T) + integral over s of the homogeneous solution from f(s) run for T - s.
  GridField duhamel = solve(u0, op, SolveConfig::uniform(T, dt, Scheme::crank_nicolson, 1)).final();
  const int intervals = 40;
  const double ds = T / intervals;
  for (int j = 0; j <= intervals; ++j) {
    const double s = j * ds;
    const double w = (j == 0 || j == intervals) ? ds / 2 : ds;
    GridField kernel = f(s);
    if (j < intervals)
      kernel = solve(kernel, op, SolveConfig::uniform(T - s, dt, Scheme::crank_nicolson, 1)).final();
    duhamel += w * kernel;
  }
  CHECK(l2_norm(forced.final() - duhamel) <= 0.02 * l2_norm(duhamel));
}

TEST_CASE("snapshots are rounded to the nearest step") {
  const Grid g(0.0, 1.0, 20);
  const auto op = DiffusionOperator::build(constant(g, 1.0));
  SolveConfig cfg;
  cfg.final_time = 1.0;
  cfg.dt = 0.1;
  cfg.snapshot_times = {0.0, 0.26, 0.5, 0.52, 1.0};
  const auto traj = solve(GridField(g), op, cfg);
  REQUIRE(traj.snapshots.size() == 4);
  CHECK(traj.snapshots[1].step == 3);
  CHECK(traj.snapshots[1].time == doctest::Approx(0.3));
  CHECK(traj.snapshots[2].step == 5);
  CHECK(traj.snapshots[3].step == 10);
  CHECK(traj.snapshots[3].time == doctest::Approx(1.0));

  const auto u = SolveConfig::uniform(0.5, 0.01, Scheme::crank_nicolson, 5);
  CHECK(u.snapshot_times.size() == 6);
  CHECK(u.steps() == 50);
}

TEST_CASE("solver input errors") {
  const Grid g(0.0, 1.0, 20);
  const auto op = DiffusionOperator::build(constant(g, 1.0));
  const GridField u(g);
  CHECK(kind_of([&] { step(u, op, 0.0, Scheme::implicit_euler); }) == ErrorKind::invalid_parameter);
  CHECK(kind_of([&] { step(GridField(Grid(0.0, 2.0, 20)), op, 0.1, Scheme::implicit_euler); }) ==
        ErrorKind::invalid_parameter);
  SolveConfig bad;
  bad.final_time = 0.1;
  bad.dt = 0.2;
  CHECK(kind_of([&] { solve(u, op, bad); }) == ErrorKind::invalid_parameter);
  bad.dt = 0.01;
  bad.snapshot_times = {0.05, 0.01};
  CHECK(kind_of([&] { solve(u, op, bad); }) == ErrorKind::invalid_parameter);
  bad.snapshot_times = {0.5};
  CHECK(kind_of([&] { solve(u, op, bad); }) == ErrorKind::invalid_parameter);
}

TEST_CASE("solves are deterministic") {
  std::mt19937_64 rng(70);
  const Grid g(0.0, 1.0, 300, Boundary::periodic);
  const auto op = DiffusionOperator::build(oracle::random_smooth_h(g, rng));
  const GridField u0 = oracle::random_field(g, rng);
  const auto cfg = SolveConfig::uniform(0.1, 1e-3, Scheme::crank_nicolson, 10);
  const auto a = solve(u0, op, cfg), b = solve(u0, op, cfg);
  for (std::size_t m = 0; m < a.snapshots.size(); ++m) CHECK(a.snapshots[m].u == b.snapshots[m].u);
}
