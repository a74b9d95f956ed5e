#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace swf::cli {

const char* tool_version();

/// Exit codes: 0 success, 1 bad input, 2 internal invariant violation,
/// 3 ambiguous assembly. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace swf::cli
