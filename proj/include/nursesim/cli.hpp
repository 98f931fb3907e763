#ifndef NURSESIM_CLI_HPP
#define NURSESIM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace nursesim::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRuntimeError = 1;
inline constexpr int kUsageError = 2;

// Entry point of the `nursesim` tool. Subcommands: simulate, sweep,
// threshold, clearing, tradeoff. Every run that writes --out also writes
// <out>.manifest with the resolved parameters and the master seed.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "lo:hi:step" or "v1,v2,...". Throws std::invalid_argument when malformed.
std::vector<double> parse_grid(const std::string& text);
std::vector<double> parse_list(const std::string& text);

}  // namespace nursesim::cli

#endif
