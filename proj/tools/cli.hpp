#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bootcorr::cli {

/// Process exit codes.
enum ExitCode : int { kOk = 0, kIoError = 1, kUsageError = 2, kNotPositiveDefinite = 3 };

/// Runs the command line `args` (without the program name). Summaries go to
/// `out` as key=value lines, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bootcorr::cli
