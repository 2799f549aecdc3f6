#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace specprobe::cli {

/// Exit codes shared by every command.
enum ExitCode : int {
    kOk = 0,
    kUsage = 2,  // bad flags or malformed input documents
    kData = 3,   // well-formed input that violates a data contract
};

/// Runs the tool with argv-style arguments (args[0] is the program name).
/// Diagnostics go to `err`; normal chatter to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specprobe::cli
