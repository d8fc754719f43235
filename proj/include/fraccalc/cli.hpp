#pragma once

#include <iosfwd>

namespace fraccalc::cli {

/// Runs the fraccalc command line. Returns the process exit code:
/// 0 success, 1 verification suite failed, 2 usage, 3 data, 4 numerical
/// precondition.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fraccalc::cli
