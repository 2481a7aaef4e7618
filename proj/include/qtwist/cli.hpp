#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qtwist {

enum ExitCode { kExitPass = 0, kExitCheckFailed = 1, kExitUsage = 2 };

/// Entry point of the command-line driver. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qtwist
