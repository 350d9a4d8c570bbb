#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace steenrod::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kBadInput = 2,
    kInternalError = 3,
};

/// Runs the command line (argv[0] is the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace steenrod::cli
