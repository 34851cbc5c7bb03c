#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eigenproj::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kBadInput = 1,
  kPrecondition = 2,
  kConditioning = 3,
  kVerificationFailed = 4,
};

/// Runs one CLI invocation. `args` excludes the program name. The JSON (or
/// CSV) result goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eigenproj::cli
