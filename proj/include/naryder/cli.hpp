#pragma once

#include <string>
#include <vector>

#include "naryder/json_io.hpp"

namespace naryder {

/// Result of one CLI invocation. Exit codes: 0 = PASS/feasible,
/// 1 = FAIL/infeasible (certificate in the payload), 2 = usage or format
/// error. The output object is {"command", "status", "payload", "seeds"};
/// identical invocations (including seeds) produce byte-identical dumps.
struct CommandResult {
  int exit_code = 0;
  Json output;
};

/// Runs one subcommand; args excludes the program name.
CommandResult run_command(const std::vector<std::string>& args);

/// Full entry point: parses argv, prints JSON (indented behind --pretty) to
/// standard output, returns the exit code.
int run_main(int argc, char** argv);

}  // namespace naryder
