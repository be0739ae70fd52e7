#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scarf::cli {

enum class ExitCode : int {
    Ok = 0,
    CheckFailed = 1,   ///< verify: at least one invariant failed
    ConfigError = 2,   ///< invalid flags, config file or parameters
    ComputeError = 3,  ///< pole, branch point, divergence, integration failure
    IoError = 4,
};

/// Runs the command line (without the program name). Data goes to `out`
/// unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scarf::cli
