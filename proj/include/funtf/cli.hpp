#pragma once

#include <iosfwd>

namespace funtf::cli {

/// Exit codes of the `funtf` command.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,        ///< bad flags, unreadable or unparseable input
  kComputation = 2,  ///< sampling or numerical failure
  kValidation = 3,   ///< a frame failed validation
};

/// Runs the command line `argv[0] <subcommand> ...` and returns its exit code.
/// Regular output goes to `out` unless --out names a file.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace funtf::cli
