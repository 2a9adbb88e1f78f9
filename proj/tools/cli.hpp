#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arion::cli {

enum ExitCode : int { ok = 0, validation_error = 1, internal_error = 2 };

/// Runs one command. @p args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace arion::cli
