#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hcont {

/// Exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_usage = 2, exit_path_failure = 3 };

/// Runs the tool on `args` (without the program name). Reports and tables go
/// to the --out file when given, otherwise to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hcont
