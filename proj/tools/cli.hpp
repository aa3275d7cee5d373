#pragma once

#include <iosfwd>

namespace fqdist::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvalidConfig = 2,
  kScaleGuard = 3,
  kBoundViolation = 4,
};

/// Parses argv, runs the subcommand and writes the report to --out (or
/// `out`). Diagnostics go to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fqdist::cli
