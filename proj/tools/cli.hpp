#pragma once

#include <iosfwd>

namespace aggremin::cli {

enum ExitCode : int { kOk = 0, kDomain = 2, kVerification = 3, kUsage = 64 };

/// Entry point of the aggremin command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aggremin::cli
