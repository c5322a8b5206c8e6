#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace primedensity::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;

// Runs one command line (args excludes the program name) and returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace primedensity::cli
