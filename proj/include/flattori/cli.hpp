#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flattori {

/// Runs one CLI invocation (args excludes the program name).
/// 0 success, 1 domain or input error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flattori
