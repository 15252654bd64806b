#pragma once

// Entry point of the `rcec` command-line tool, callable in-process.
//
// Exit codes: 0 ok, 2 usage or parse error, 3 data-invariant violation,
// 4 numerical failure, 1 anything else (e.g. an output file cannot be written).

#include <ostream>
#include <string>
#include <vector>

namespace rcec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitOther = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumerical = 4;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rcec::cli
