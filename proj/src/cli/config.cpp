#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "stochoptics/cli.hpp"
#include "stochoptics/errors.hpp"

namespace stochoptics::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  std::vector<std::pair<std::string, std::string>> out;

  if (trim(text).starts_with("{")) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw IoError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.contains("config") || !j["config"].is_object()) {
      throw IoError("JSON config file '" + path + "' has no \"config\" object");
    }
    for (const auto& [k, v] : j["config"].items()) out.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
    return out;
  }

  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::string body = trim(line);
    if (body.starts_with("# config.")) {
      body = body.substr(9);
    } else if (body.empty() || body.front() == '#') {
      continue;
    } else if (body.find('=') == std::string::npos) {
      continue;  // a CSV data row
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw IoError("malformed config line '" + line + "' in '" + path + "'");
    out.emplace_back(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
  }
  return out;
}

}  // namespace stochoptics::cli
