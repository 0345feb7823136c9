#pragma once

// Subcommand drivers behind the critwalk executable.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "critwalk/harness.hpp"

namespace critwalk::cli {

enum ExitCode : int { kSuccess = 0, kRuntimeFailure = 1, kInvalidConfig = 2 };

struct ExperimentConfig {
  std::string model = "er";
  std::uint64_t n = 0;
  double lambda = 0.0;
  bool lambda_given = false;
  std::uint32_t d = 3;
  double beta = 1.0;
  double gamma = 1.0;
  std::optional<double> p_override;
  bool simple_only = false;
  std::uint64_t trials = 0;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::vector<double> a_grid;
  std::string direction = "lower";
  std::string out_dir = ".";
  std::string format = "csv";
  bool plot = false;
};

/// Builds the model spec; throws ParameterError naming the violated invariant.
harness::ModelSpec build_model(const ExperimentConfig& config);

/// Checks every invariant before any work starts.
void validate(const ExperimentConfig& config);

/// Parses "1,2.5,4" into {1, 2.5, 4}.
std::vector<double> parse_grid(const std::string& text);

int cmd_tail(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_oracle_check(const std::string& model, std::uint64_t count, std::uint64_t seed, bool inject_fault,
                     std::ostream& out, std::ostream& err);
int cmd_critical(double beta, std::ostream& out, std::ostream& err);

struct WalkConfig {
  std::string law = "poisson";
  std::string mode = "stay-positive";
  std::uint64_t horizon = 0;
  std::int64_t j = -1;
  std::int64_t j_max = -1;
  std::int64_t start = 1;
  std::uint64_t trials = 0;
  std::uint64_t seed = 1;
  std::uint64_t count = 0;
  double prob = 0.5;
  std::uint32_t d = 3;
  double x = 0.0;
};

int cmd_walk(const WalkConfig& config, std::ostream& out, std::ostream& err);
int cmd_simplicity(std::uint64_t n, std::uint32_t d, std::uint64_t trials, std::uint64_t seed, unsigned workers,
                   std::ostream& out, std::ostream& err);

/// Full command-line entry point; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace critwalk::cli
