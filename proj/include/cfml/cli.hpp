#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cfml::cli {

// Process exit codes. Stable contract for scripts.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kIo = 2,
    kParse = 3,
    kVerifyFailed = 4,
};

/// Runs the command line `args` (args[0] is the program name) and returns
/// the exit code. Reports go to `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cfml::cli
