#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ac/stationary.hpp"

namespace ac {

// Process exit codes. CSV/JSON artifact layouts are frozen in the README.
enum ExitCode : int {
  exit_ok = 0,
  exit_acceptance_fail = 1,
  exit_usage = 2,
  exit_numerical = 3,
};

/// One reproducible run. A config file carries the same keys as the CLI
/// flags; flags override file values. h <= eps/4 is enforced at load for
/// every eps in play, and eps lists must be strictly decreasing. The Monte
/// Carlo oracle is the only seeded component.
struct RunConfig {
  std::string subcommand;
  std::string geometry = "clifford";
  int n = 2;
  int p = 1, q = 1;
  double eps = 0.05;
  std::vector<double> eps_list;
  int nodes = 2000;
  std::string potential = "quartic";
  std::vector<double> potential_coeffs;
  std::string out_dir = "out";
  std::uint64_t seed = 12345;
  std::vector<LayerSpec> layers;
  bool bo = false;
  std::string solution_file;
  double perturb = 0.0;
  std::string initial_file;
  double dt = 0.0;
  double t_max = 0.0;
  double settle_tol = 1e-8;
  int levels = 4;
  int mc_samples = 100000;
  bool serial = false;
};

// Parse "r1:+,r2:-" layer lists and "0.2,0.1,0.05" eps lists.
std::vector<LayerSpec> parse_layers(const std::string& text);
std::vector<double> parse_eps_list(const std::string& text);

// Merge a JSON config file into cfg (unknown keys are ConfigError).
void apply_config_file(RunConfig& cfg, const std::string& path);

// Validate, execute the subcommand, write artifacts under cfg.out_dir.
// Returns an ExitCode; throws nothing (errors are mapped to codes and
// printed to stderr).
int run(const RunConfig& cfg);

}  // namespace ac
