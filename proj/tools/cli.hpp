#ifndef SCHLAFLI_TOOLS_CLI_HPP
#define SCHLAFLI_TOOLS_CLI_HPP

#include <array>
#include <iosfwd>
#include <string>

namespace schlafli::cli {

// Exit codes: 0 success, 1 usage error, 2 domain error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_domain = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// "a,b,c,d,e,f" -> six finite nonnegative reals.
std::array<double, 6> parse_edges(const std::string& text);

// "3/2" or "1.5" -> 2j.
int parse_two_j(const std::string& text);

// %.17g with '.' as the decimal separator.
std::string format_double(double x);

}  // namespace schlafli::cli

#endif
