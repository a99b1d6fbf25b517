#pragma once

#include <iosfwd>

namespace quatgroup::cli {

enum ExitCode : int { kSuccess = 0, kInvalidInput = 2, kUncertified = 3 };

/// Entry point of the quatgroup tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace quatgroup::cli
