#pragma once

// The `pats` command-line front end.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pats::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kMismatch = 2 };

/// Runs one command line, arguments without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

/// Targets of `reproduce`.
const std::vector<std::string>& reproduce_targets();

}  // namespace pats::cli
