#pragma once

#include <iosfwd>

namespace nrange::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailure = 1;
inline constexpr int kUsage = 2;

/// Entry point of the `nrange` executable; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nrange::cli
