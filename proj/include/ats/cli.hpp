// cli.hpp - the `ats` command line, callable in-process.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ats {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;    // usage or input error
inline constexpr int kExitVerify = 2;   // a computed separator failed verification

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ats
