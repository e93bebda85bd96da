#ifndef HALFINV_TOOLS_CLI_HPP
#define HALFINV_TOOLS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "halfinv/pipeline.hpp"

namespace halfinv::cli {

enum class Command { direct, synth, solve, stability, check };

enum ExitCode : int { ok = 0, check_failed = 1, parse_error = 2, numerical_failure = 3 };

struct StabilityOptions {
  std::size_t trials = 20;
  double q_amplitude = 0.2;
  double h_amplitude = 0.1;
  double H_amplitude = 0.1;
  double ball_radius = 5.0;
  unsigned threads = 0;
};

struct RunConfig {
  Command command = Command::direct;
  std::string input_path;
  std::string output_path = "-";  // "-" is standard output
  SolveConfig overrides;
  /// "exact" without a value: take omega from the input (solve) or from the
  /// ground truth (synth, stability, check).
  bool omega_from_input = false;
  std::uint64_t seed = 0;
  StabilityOptions stability;
};

/// Executes one command. Returns an ExitCode; messages go to `err`.
int run(const RunConfig& cfg, std::ostream& err);

/// Parses the command line and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string version_string();

}  // namespace halfinv::cli

#endif  // HALFINV_TOOLS_CLI_HPP
