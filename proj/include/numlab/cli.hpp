#pragma once

#include <iosfwd>

namespace numlab::cli {

/// Exit status shared by every subcommand.
enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,      ///< bad flags, unparsable expressions or files
    kNotConverged = 2,    ///< iteration limit or numeric breakdown
};

/// Runs the `numlab` command line. Normal output goes to `out`, diagnostics
/// to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace numlab::cli
