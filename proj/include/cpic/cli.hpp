#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cpic {

// Runs the tool on argv-style arguments (program name excluded).
// Exit codes: 0 success, 1 input/parse error, 2 validation or identity failure.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

} // namespace cpic
