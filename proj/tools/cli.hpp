#pragma once

#include <ostream>

namespace wigner::cli {

// Exit codes: 0 checks pass / recovery certified, 1 mathematical failure
// (still a valid run), 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

// Reports go to out (written once, at the end); diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wigner::cli
