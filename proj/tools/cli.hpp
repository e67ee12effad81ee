#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qmoduli::cli {

/// Exit codes: 0 success, 1 verification failure, 2 usage error.
enum ExitCode : int { ok = 0, failure = 1, usage = 2 };

/// Runs one invocation. `args` excludes the program name. The JSON report
/// goes to `out` (or to --output), the human summary to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Translates a job config document into command-line arguments.
/// Throws std::invalid_argument on invalid configs.
std::vector<std::string> config_to_args(const std::string& json_text);

}  // namespace qmoduli::cli
