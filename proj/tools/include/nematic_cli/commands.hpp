#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace nematic::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kConfigError = 2,
  kNumericAbort = 3,
  kMissingInput = 4,
};

struct CliOptions {
  std::string command;
  std::filesystem::path config;  ///< empty when the command runs on paths only
  std::filesystem::path out = ".";
  int threads = 1;
  /// Single FFT thread and zero wall-clock in the manifest, so reruns are bit-identical.
  bool test_mode = false;
  std::vector<std::filesystem::path> inputs;
};

/// Known command names, in help order.
const std::vector<std::string>& command_names();

/// Runs one command and maps failures to exit codes; messages go to `err`,
/// progress to `log`.
int run_command(const CliOptions& opt, std::ostream& log, std::ostream& err);

}  // namespace nematic::cli
