#pragma once

#include <iosfwd>

namespace pmlab {

inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitPropertyFailure = 2;

// Entry point of the pmlab tool.  Returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pmlab
