#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace specrad {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitInput = 3,
  kExitNumerical = 4,
};

/// Runs the `specrad` command line. `args[0]` is the program name. Data goes
/// to `out`, diagnostics to `err`.
///
/// Subcommands: estimate, orbit, trace, normaloid, fov, ensemble, compare.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specrad
