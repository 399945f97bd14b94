#pragma once

// Experiment configuration files.
//
// Grammar: `[section]` headers, `key = value` lines, comma-separated lists,
// full-line comments starting with '#' or ';'. Unknown sections or keys are
// errors. See README.md for the key reference.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "singheat/coefficients.hpp"
#include "singheat/experiments.hpp"
#include "singheat/grid.hpp"
#include "singheat/solver.hpp"

namespace singheat {

enum class Command { solve, sweep, uniqueness, consistency, duhamel, diagnose };

std::string_view to_string(Command command);
std::optional<Command> parse_command(std::string_view text);

struct ExperimentConfig {
  Command command = Command::solve;
  std::string output_dir = "out";
  std::uint64_t seed = 0;
  std::optional<double> epsilon;  // solve, duhamel
  std::size_t quadrature_intervals = 16;
  bool fine_reference = false;

  double a = -1.0;
  double b = 1.0;
  std::size_t n = 257;
  Boundary boundary = Boundary::dirichlet_zero;
  FaceRule face_rule = FaceRule::arithmetic;

  Background background = Background::constant(1.0);
  double h0 = 1.0;
  std::vector<SingularAtom> atoms;

  InitialData initial;

  double final_time = 0.1;
  double dt = 1e-3;
  Scheme scheme = Scheme::implicit_euler;
  std::size_t snapshots = 50;

  std::vector<double> epsilons;
  std::optional<PerturbationSpec> perturbation;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct ParseResult {
  std::optional<ExperimentConfig> config;
  std::vector<std::string> errors;  // each names the offending key

  bool ok() const { return config.has_value(); }
};

ParseResult parse_config(std::string_view text);

/// Canonical text form; numbers carry 17 significant digits so that
/// parse(serialize(c)) == c.
std::string serialize(const ExperimentConfig& config);

/// Cross-field checks (eps >= 4 dx, atom placement, ...). Returns errors.
std::vector<std::string> validate(const ExperimentConfig& config);

Grid make_grid(const ExperimentConfig& config);
Problem make_problem(const ExperimentConfig& config);
SolveConfig make_solve_config(const ExperimentConfig& config);

}  // namespace singheat
