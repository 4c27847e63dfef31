#pragma once

// Command-line front end. run_cli is the whole program minus process
// plumbing, so tests can drive it in-process.
//
// Exit codes:
//   0  success, or every verdict as expected
//   1  an experiment or suite produced an unexpected verdict
//   2  invalid input: flags, files, JSON, matrices, parameter combinations
//   3  numerical failure: non-convergence or an undefined value

#include <iosfwd>
#include <string>
#include <vector>

namespace qdiv::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_unexpected = 1;
inline constexpr int exit_invalid = 2;
inline constexpr int exit_numerical = 3;

/// args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qdiv::cli
