#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace berlab {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // a verification failed
  kExitUsage = 2,    // bad flags, malformed files, bad configuration
  kExitData = 3,     // well-formed input that does not fit (dimension mismatch, ...)
};

/// Runs one command. args excludes the program name. JSON goes to out,
/// human-readable summaries and diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace berlab
