#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace anitm {

struct CommandOptions {
  std::string out_dir;        // overrides the config's "output"; "." when both are empty
  std::string input;          // symmetrize: grid file
  std::string second_input;   // symmetrize: optional second grid for the Hardy-Littlewood check
  std::optional<std::uint64_t> seed;  // overrides search.seed
  int threads = 1;
  std::vector<int> only;      // check: subset of check ids, all when empty
};

struct CommandOutcome {
  int status;           // 0, or 1 when a check failed
  std::string summary;  // human-readable lines for stdout
};

/// Runs `geometry`, `symmetrize`, `maximize`, `sweep` or `check` and writes its files.
/// Library errors propagate as anitm::Error.
CommandOutcome run_command(const std::string& name, const std::string& config_json, const CommandOptions& options);

std::vector<std::string> command_names();

}  // namespace anitm
