#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace atc {

// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2, kUnsupported = 3 };

// Runs the `atc` command line. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace atc
