#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hgk::cli {

/// Dispatches one CLI invocation. `args` excludes the program name.
/// Returns the process exit status: 0 when every check passed, 1 when a
/// verification failed (the first failing section is printed to `err`),
/// 2 for usage, parse, or schema errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hgk::cli
