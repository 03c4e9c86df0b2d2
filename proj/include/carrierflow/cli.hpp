#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace carrierflow {

/// Exit statuses of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitValidation = 3,
    kExitInfeasible = 4,
    kExitSolverLimit = 5,
    kExitIo = 6,
};

/// Runs one command. `args` excludes the program name. Results go to `out`,
/// progress lines and the one-line JSON error report to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace carrierflow
