#pragma once

// Executes one ExperimentConfig and writes its CSV files and summary.txt.

#include <iosfwd>
#include <string>

#include "singheat/config.hpp"

namespace singheat {

struct RunOptions {
  std::string output_dir;   // overrides config.output_dir when non-empty
  unsigned threads = 1;     // 0 = hardware concurrency
  bool verbose = false;
  std::ostream* log = nullptr;  // progress and summary echo; null = silent
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitAssertion = 2;

/// Exit code: 0 all checks pass, 2 a check failed, 1 config or runtime error.
int run(const ExperimentConfig& config, const RunOptions& options = {});

/// Built-in self-test problem: periodic [-1, 1], h = 1, sin(pi x), CN.
ExperimentConfig diagnose_config();

}  // namespace singheat
