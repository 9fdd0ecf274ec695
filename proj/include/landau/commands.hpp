#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace landau {

enum ExitCode : int {
  exit_pass = 0,
  exit_verification_failed = 1,
  exit_config_error = 2,
  exit_numeric_failure = 3,
};

struct CommandOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;  // overrides the config's output directory
  unsigned threads = 0;                      // 0 = hardware concurrency
  bool json = false;                         // machine-readable summary only
  std::optional<std::vector<int>> q;         // overrides the config's q list
};

int cmd_spectrum(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_weights(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_toeplitz(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_identities(const CommandOptions& opt, std::ostream& out, std::ostream& err);

/// Full command line (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace landau
