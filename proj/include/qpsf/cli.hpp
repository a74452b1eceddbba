#pragma once

#include <iosfwd>

namespace qpsf::cli {

// Exit codes of the qpsf tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;      // I/O and other runtime errors
inline constexpr int kExitUsage = 2;        // invalid flags, arguments or input files
inline constexpr int kExitTruncation = 3;   // coverage / truncation guard
inline constexpr int kExitDiagnostics = 4;  // a requested check failed

// Entry point of the `qpsf` tool: subcommands compute, evolve, reconstruct, render.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qpsf::cli
