#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cyclicity {

enum ExitCode : int { kExitCyclic = 0, kExitNotCyclic = 1, kExitError = 2, kExitTooLarge = 3 };

/// Runs the command line `cyclicity <args...>` (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cyclicity
