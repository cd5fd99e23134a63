#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pathchain::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;     // contract, convergence or audit failure
inline constexpr int kExitInputError = 2;  // unreadable input, bad flags

/// Default output directory when --out is not given.
inline constexpr const char* kOutDirEnv = "PATHCHAIN_OUT_DIR";

/// Runs `pathchain <args...>`; args excludes the program name. Normal output
/// goes to `out`, JSON error objects to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pathchain::cli
