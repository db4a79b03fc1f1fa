#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bneq::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,     // bad arguments, unreadable or malformed input
  kAnalysis = 2,  // input violates a precondition of the requested analysis
  kBudget = 3,    // an enumeration or state-space guard was hit
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bneq::cli
