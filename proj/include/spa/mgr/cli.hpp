// Command-line front end:
//   analyzer [--config <registry>] [--out <dir>] -a <id>[=key:val[;key:val]*]
//            (-a ... repeatable) <program.ir>...
// Exit codes: 0 success, 1 usage/parse error, 2 planning error, 3 analysis
// failure.
#pragma once

#include <iosfwd>

namespace spa::mgr {

int cliMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace spa::mgr
