#pragma once

// Command-line front end. Lives in the library so tests can drive it
// in-process; tools/l1opt_main.cpp is a two-line wrapper.
//
// stdout carries only the JSON result (or the point stream for enumerate);
// diagnostics go to stderr.

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace l1opt {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Stable exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;  // no feasible point / grid point / empty region
inline constexpr int kExitUnbounded = 3;   // bound: relaxation is unbounded

// Default tolerance for `solve` when --tolerance is absent.
inline constexpr const char* kToleranceEnv = "L1OPT_TOLERANCE";

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace l1opt
