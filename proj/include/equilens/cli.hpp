#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace equilens::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kArgumentError = 2,
  kResourceLimit = 3,
};

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace equilens::cli
