#pragma once

#include <ostream>
#include <span>
#include <string>

namespace stabaut::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerification = 2;

/// Name of the environment variable overriding search budgets.
inline constexpr const char* kBudgetVariable = "STABAUT_SEARCH_BUDGET";

/// Runs one command (args excludes the program name). Reports go to out,
/// diagnostics to err. Returns 0 on success, 1 on usage or input errors and
/// 2 when an identity that should hold fails to verify.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace stabaut::cli
