#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "edgeguard/verify.hpp"

namespace edgeguard::cli {

inline constexpr int kExitStable = 0;
inline constexpr int kExitUnstable = 1;
inline constexpr int kExitMarginal = 2;
inline constexpr int kExitInputError = 3;

int exit_code_for(VerdictStatus s);

/// Runs one command line (args[0] is the program name). Reports go to
/// `out`, diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace edgeguard::cli
