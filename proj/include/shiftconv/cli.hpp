#ifndef SHIFTCONV_CLI_HPP_
#define SHIFTCONV_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace shiftconv {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Runs one `shiftconv` subcommand. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shiftconv

#endif  // SHIFTCONV_CLI_HPP_
