#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wassarb::cli {

enum ExitCode { kOk = 0, kFailure = 1, kParseError = 2, kInfeasible = 3 };

// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wassarb::cli
