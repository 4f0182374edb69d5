#pragma once

#include <iosfwd>

namespace tightproj::cli {

/// Runs one command line. Reports go to `out`, diagnostics to `err`.
/// Exit codes: 0 pass, 1 certificate failure, 2 invalid input,
/// 3 infeasible or obstructed.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tightproj::cli
