#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tass::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_failure = 1,
  exit_usage = 2,
};

/// Runs the `tass` command line. `args` excludes the program name. Progress
/// and summaries go to `out`; failures produce exactly one line on `err` of
/// the form `tass: error[<kind>]: <message>`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tass::cli
