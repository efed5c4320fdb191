#ifndef STOCHOPTICS_CLI_HPP
#define STOCHOPTICS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace stochoptics::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitIo = 4;

/// Master seed used when --seed is not given.
inline constexpr std::uint64_t kDefaultSeed = 271828;

/// Runs one command line (args[0] is the program name).  Results go to the
/// --out file or `out`; diagnostics and usage text go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads `key=value` pairs from a config file: a plain key=value file, a CSV
/// written by this tool (lines "# config.key=value"), or a JSON report (its
/// "config" object).
std::vector<std::pair<std::string, std::string>> load_config(const std::string& path);

}  // namespace stochoptics::cli

#endif  // STOCHOPTICS_CLI_HPP
