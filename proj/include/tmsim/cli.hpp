#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tmsim {

// Exit codes shared by every subcommand.
inline constexpr int kExitHalted = 0;
inline constexpr int kExitUsage = 1;  // usage or parse error
inline constexpr int kExitStuck = 2;
inline constexpr int kExitStepLimit = 3;
inline constexpr int kExitMismatch = 4;  // verification mismatch

/// Full command-line front end (subcommands: run, fib, validate, bench).
/// `args` excludes the program name. Returns the process exit code;
/// never throws. The real main() forwards to this, and tests drive it
/// directly with captured streams.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tmsim
