// singheat <command> [--config path] [--output dir] [--threads k] [--verbose]

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "singheat/config.hpp"
#include "singheat/runner.hpp"

namespace {

constexpr const char* kUsage =
    "usage: singheat <solve|sweep|uniqueness|consistency|duhamel|diagnose> "
    "[--config path] [--output dir] [--threads k] [--verbose]\n";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized heat equation with singular conductivity"};
  std::string command, config_path, output_dir;
  unsigned threads = 1;
  bool verbose = false;
  app.add_option("command", command, "solve | sweep | uniqueness | consistency | duhamel | diagnose")
      ->required();
  app.add_option("--config", config_path, "experiment config file");
  app.add_option("--output", output_dir, "output directory (overrides [run] output_dir)");
  app.add_option("--threads", threads, "worker threads for per-eps work, 0 = auto");
  app.add_flag("--verbose", verbose, "progress messages");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n' << kUsage;
    return singheat::kExitError;
  }

  const auto cmd = singheat::parse_command(command);
  if (!cmd) {
    std::cerr << "unknown command '" << command << "'\n" << kUsage;
    return singheat::kExitError;
  }

  singheat::ExperimentConfig config;
  if (*cmd == singheat::Command::diagnose && config_path.empty()) {
    config = singheat::diagnose_config();
  } else {
    if (config_path.empty()) {
      std::cerr << "command " << command << " needs --config\n" << kUsage;
      return singheat::kExitError;
    }
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "cannot read " << config_path << '\n';
      return singheat::kExitError;
    }
    std::ostringstream text;
    text << in.rdbuf();
    // The positional command wins; a [run] command key must agree with it.
    bool has_command = false;
    std::istringstream lines(text.str());
    for (std::string line; std::getline(lines, line);) {
      const auto key = line.find_first_not_of(" \t");
      if (key != std::string::npos && line.compare(key, 7, "command") == 0) has_command = true;
    }
    auto parsed = singheat::parse_config(text.str());
    if (!parsed.ok()) {
      for (const auto& e : parsed.errors) std::cerr << "config error: " << e << '\n';
      return singheat::kExitError;
    }
    config = *parsed.config;
    if (has_command && config.command != *cmd) {
      std::cerr << "config error: [run] command: '" << singheat::to_string(config.command)
                << "' disagrees with command line '" << command << "'\n";
      return singheat::kExitError;
    }
    config.command = *cmd;
  }

  singheat::RunOptions options;
  options.output_dir = output_dir;
  options.threads = threads;
  options.verbose = verbose;
  options.log = &std::cout;
  return singheat::run(config, options);
}
