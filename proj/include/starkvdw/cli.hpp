#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace starkvdw::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kNoSolution = 3,
  kOracleFailure = 4,
};

/// Runs the command line (args excludes the program name). Normal output goes
/// to `out` unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses `key = value` lines with `#` comments. Keys are normalized to use
/// '-' separators. Throws SpecError on malformed lines.
std::map<std::string, std::string> parse_key_values(std::istream& in, const std::string& source);

} // namespace starkvdw::cli
