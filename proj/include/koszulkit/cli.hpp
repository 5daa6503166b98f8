#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace koszulkit {

/// Exit codes: 0 computed (whatever the verdicts), 1 input error, 2 a
/// falsification alarm (two routes disagree or an implication fails).
enum ExitCode { kComputed = 0, kInputError = 1, kAlarm = 2 };

/// `koszulkit <command> <file> [flags]` without the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace koszulkit
