#pragma once

#include <iosfwd>

namespace kappa::cli {

// Exit codes: 0 pass, 1 check failure, 2 usage error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kappa::cli
