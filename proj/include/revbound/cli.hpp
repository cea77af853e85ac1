#pragma once

#include <ostream>

namespace revbound {

// Entry point of the `revbound` tool. Exit codes: 0 success, 1 usage or
// parse error, 2 when a numerical bound check fails. `color` enables ANSI
// status colours in the verify table.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err, bool color = false);

}  // namespace revbound
