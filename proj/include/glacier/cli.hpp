#pragma once

#include <iosfwd>

namespace glacier::cli {

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 2,
  kDomainTermination = 3,
  kVerificationFailure = 4,
};

/// Entry point of the glacier-dyn command line tool.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace glacier::cli
