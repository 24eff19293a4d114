#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lue::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Help or version output was printed; carries the exit code.
struct EarlyExit {
  int code = 0;
  explicit EarlyExit(int c) : code(c) {}
};

enum class Command { variance, sweep, cheb, asymp, clt, sample };
enum class OutputFormat { json, csv };

std::string_view to_string(Command c);
std::string_view to_string(OutputFormat f);

struct ExperimentConfig {
  Command command = Command::variance;
  std::string f = "identity";
  int n = 100;
  int alpha = 0;
  double eps = 0.5;
  int N = 64;
  int M = 0;
  int samples = 5000;
  std::uint64_t seed = 1;
  int quad_points = 400;
  OutputFormat output_format = OutputFormat::json;
  std::string output_path = "-";
  std::vector<int> n_list;
  bool limit = false;
  std::string regime = "bulk";
  int grid_points = 50;
  bool check_equivalence = false;
};

// Keys accepted from flags (as --key) and config files (as key = value).
const std::vector<std::string_view>& config_keys();

// Applies one key/value pair; throws ConfigError on unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

// Flat `key = value` lines; '#' starts a comment.
void apply_config_text(ExperimentConfig& cfg, std::string_view text);

// argv[1] is the command; flags may include --config FILE, applied before the
// remaining flags regardless of position.
ExperimentConfig parse_command_line(int argc, const char* const* argv);

// Writes the command's output; returns the process exit code.
int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

std::string version_string();

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kNonConvergence = 3 };

}  // namespace lue::cli
