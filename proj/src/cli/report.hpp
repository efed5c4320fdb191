#ifndef STOCHOPTICS_CLI_REPORT_HPP
#define STOCHOPTICS_CLI_REPORT_HPP

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace stochoptics::cli {

std::string format_number(double v);

/// Binds CLI options to variables and remembers them, in registration order,
/// so the fully resolved configuration can be written next to every result.
class OptionSet {
 public:
  explicit OptionSet(CLI::App* app) : app_(app) {}

  template <class T>
  CLI::Option* add(const std::string& key, T& var, const std::string& help, bool record = true) {
    auto* opt = app_->add_option("--" + key, var, help)->capture_default_str();
    if (record) {
      entries_.emplace_back(key, [&var] {
        if constexpr (std::is_floating_point_v<T>) {
          return format_number(var);
        } else if constexpr (std::is_integral_v<T>) {
          return std::to_string(var);
        } else {
          return std::string(var);
        }
      });
    }
    return opt;
  }

  std::vector<std::pair<std::string, std::string>> resolved() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [k, f] : entries_) {
      auto v = f();
      if (!v.empty()) out.emplace_back(k, std::move(v));
    }
    return out;
  }

 private:
  CLI::App* app_;
  std::vector<std::pair<std::string, std::function<std::string()>>> entries_;
};

using Cell = std::variant<double, std::int64_t, std::string>;

/// A titled table plus run metadata, written as CSV or JSON.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, Cell>> summary;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void write(std::ostream& out, const std::string& format) const;
};

}  // namespace stochoptics::cli

#endif  // STOCHOPTICS_CLI_REPORT_HPP
