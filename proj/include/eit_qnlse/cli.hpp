#pragma once

#include <iosfwd>

namespace eitq {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParameter = 2;
inline constexpr int kExitNumeric = 3;

/// Entry point of the `eit-qnlse` tool. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

const char* version();

} // namespace eitq
