#include "report.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "stochoptics/errors.hpp"
#include "stochoptics/version.hpp"

namespace stochoptics::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return format_number(*d);
    return *d;
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<std::string>(c);
}

}  // namespace

void Report::write(std::ostream& out, const std::string& format) const {
  if (format == "csv") {
    out << "# version=" << kVersion << '\n';
    out << "# command=" << command << '\n';
    out << "# seed=" << seed << '\n';
    for (const auto& [k, v] : config) out << "# config." << k << '=' << v << '\n';
    for (const auto& [k, v] : summary) out << "# summary." << k << '=' << cell_text(v) << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
      out << '\n';
    }
  } else if (format == "json") {
    nlohmann::ordered_json j;
    j["version"] = std::string(kVersion);
    j["command"] = command;
    j["seed"] = seed;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config) cfg[k] = v;
    j["config"] = cfg;
    nlohmann::ordered_json sum = nlohmann::ordered_json::object();
    for (const auto& [k, v] : summary) sum[k] = cell_json(v);
    j["summary"] = sum;
    j["columns"] = columns;
    nlohmann::ordered_json table = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json r = nlohmann::ordered_json::array();
      for (const auto& c : row) r.push_back(cell_json(c));
      table.push_back(r);
    }
    j["rows"] = table;
    out << j.dump(2) << '\n';
  } else {
    throw ConfigError("unknown output format '" + format + "'");
  }
}

}  // namespace stochoptics::cli
