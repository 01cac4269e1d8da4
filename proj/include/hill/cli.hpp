#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hill::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParse = 2,
  kNumeric = 3,
  kContradiction = 4,
};

/// Runs the command line `args` (without the program name), writing results to
/// `out` and messages to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hill::cli
