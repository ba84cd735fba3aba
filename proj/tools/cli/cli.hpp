#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace radplap::cli {

/// Exit codes shared by every command.
enum ExitCode : int { kPass = 0, kVerdictFail = 1, kUsage = 2 };

/// Entry point of the radial_plap tool. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace radplap::cli
