#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bandlimit::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics and warnings to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bandlimit::cli
