#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shatter::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
    kSuccess = 0,      // command succeeded / claim holds
    kClaimFailure = 1, // non-extremal input, failed verification, invalid script
    kInputError = 2,   // unreadable or malformed input, bad arguments
};

/// Runs the command line (args[0] is the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace shatter::cli
