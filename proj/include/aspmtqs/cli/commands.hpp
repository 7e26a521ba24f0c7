#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aspmtqs::cli {

/// Exit codes: 0 sat / entailed, 1 unsat / not entailed, 2 unknown / timeout,
/// 3 usage or pipeline error.
enum ExitCode { kSat = 0, kUnsat = 1, kUnknown = 2, kError = 3 };

/// Runs the command line `args` (without the program name).
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace aspmtqs::cli
