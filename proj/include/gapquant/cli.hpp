#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gapquant::cli {

/// Runs one command line (args excludes the program name) and returns the exit
/// status: 0 success, 1 data-level error, 2 unreadable or malformed input or
/// bad usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gapquant::cli
