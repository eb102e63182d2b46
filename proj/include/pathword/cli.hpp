#ifndef PATHWORD_CLI_HPP_
#define PATHWORD_CLI_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pathword::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

// Runs one command line (without the program name). Diagnostics go to
// `err` as a single line; results to `out`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

// "90", "90s", "2h", "3d", "1y" (365 days) to seconds. Throws
// std::invalid_argument.
double parse_timeframe(std::string_view text);

}  // namespace pathword::cli

#endif  // PATHWORD_CLI_HPP_
