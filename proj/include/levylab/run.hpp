#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace levylab {

enum class Command { Criterion, Levy, Posdef, Demo, All };

std::string to_string(Command c);
// Throws ConfigError for unknown names.
Command parse_command(const std::string& name);

// Everything a run depends on; run(config) is reproducible from this alone.
struct RunConfig {
  Command command = Command::Criterion;
  std::string spec;
  double p = 1.0;
  std::uint64_t seed = 0;
  int theta_count = 720;
  double x1_max = 64.0;
  std::string levels;  // "DxS,..."; empty selects the per-dimension defaults
  int trials = 200;
  int points = 20;
  std::vector<int> demo_n = {2, 4, 8, 16, 32, 64, 128};
  std::filesystem::path out = "levylab_out";
  bool write_csv = true;
  bool write_report = true;
};

enum ExitCode : int { kExitOk = 0, kExitInvalidConfig = 2, kExitNumerical = 3 };

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Effective configuration as key = value lines (the same keys the config
// file accepts). Levels are written resolved.
std::string serialize_config(const RunConfig& config);

// Parses the command line. Flags override the --config file, which overrides
// defaults. Throws ConfigError with a human-readable reason; help requests
// are returned as `help` text with no config.
struct ParsedArgs {
  RunConfig config;
  std::string help;  // non-empty when --help was requested
};
ParsedArgs parse_args(const std::vector<std::string>& args);

struct RunOutcome {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> artifacts;  // manifest.txt last
  std::string message;                            // banner / reason for a nonzero exit
};

// Validates the config, runs the command and writes its artifacts plus
// manifest.txt into config.out. Progress and errors go to `log`.
RunOutcome run(const RunConfig& config, std::ostream& log);

// Hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

}  // namespace levylab
