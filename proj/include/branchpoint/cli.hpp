#pragma once

#include <iosfwd>

namespace branchpoint {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;

/// Entry point of branchpoint-lab. Results go to `out` unless --output names a file.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace branchpoint
