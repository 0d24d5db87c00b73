#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plotting::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitInvalidPlan = 10;
inline constexpr int kExitUnsat = 20;
inline constexpr int kExitUnknown = 30;

/// Runs one command line (without the program name) and returns the exit code.
/// `solver_env` stands in for $PLOTTING_SOLVER.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::string& solver_env = {});

}  // namespace plotting::cli
