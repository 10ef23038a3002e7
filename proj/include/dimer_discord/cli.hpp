#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dimer::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int { kSuccess = 0, kComputationFailure = 1, kUsageError = 2 };

/// Runs one command line (arguments without the program name). Machine
/// output goes to out, diagnostics to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dimer::cli
