#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skewdirac::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitParse = 2;

// Runs one command line (without the program name). Data goes to `out`,
// diagnostics to `err`; "-" as the file argument reads from `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace skewdirac::cli
