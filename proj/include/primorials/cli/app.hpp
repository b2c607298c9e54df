#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace primorials::cli {

/// Stable exit-code contract for scripting.
enum ExitCode : int {
  kExitSuccess = 0,
  kExitNegative = 1,  // composite, rejected certificate, failed claim
  kExitUsage = 2,
  kExitResource = 3,  // search cap, row errors, proof not attempted
};

/// Environment variable that overrides the default worker count.
inline constexpr const char* kThreadsEnv = "PRIMORIALS_THREADS";

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace primorials::cli
