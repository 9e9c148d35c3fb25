#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polychrome::tools {

enum ExitCode : int { kVerified = 0, kFound = 1, kInputError = 2 };

/// Runs one subcommand (args exclude the program name). The JSON report
/// goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polychrome::tools
