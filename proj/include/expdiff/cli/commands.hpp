#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "expdiff/cli/input.hpp"

namespace expdiff {

struct CommandOptions {
  std::string point, variety, sub, over, left, right, base;
  std::string mode = "plain";
  std::vector<std::string> polys;
  int bound = 3;
  std::uint64_t seed = 0;
  bool absolute = false;
  GroebnerBudget budget;
};

struct CommandResult {
  std::string report;
  // 0 holds / done, 1 fails with a witness, 2 input or budget error,
  // 3 soundness alarm.
  int exit_code = 0;
};

const std::vector<std::string>& command_names();

// Never throws for library errors: they become `error:` lines and an
// exit code.
CommandResult run_command(const std::string& command, const InputModel& model, const CommandOptions& options);

// Parses `text` first; parse failures report line and column.
CommandResult run_on_text(const std::string& command, std::string_view text, const CommandOptions& options);

// Built-in end-to-end checks that need no input.
CommandResult run_selftest();

}  // namespace expdiff
