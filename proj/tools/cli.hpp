#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace intrec::cli {

enum ExitCode : int { kOk = 0, kVerdictFailed = 1, kParseError = 2, kDomainError = 3 };

/// Runs one CLI invocation. args excludes the program name. The JSON report
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace intrec::cli
