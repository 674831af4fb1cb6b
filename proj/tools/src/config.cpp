#include "unext/tools/config.hpp"

#include <fstream>
#include <stdexcept>

namespace unext::tools {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty()) {
    throw std::invalid_argument("config key '" + key + "' expects a number, got '" + value + "'");
  }
  return v;
}

long long to_integer(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty()) {
    throw std::invalid_argument("config key '" + key + "' expects an integer, got '" + value + "'");
  }
  return v;
}

}  // namespace

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    out[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return out;
}

void apply_sweep_setting(SweepConfig& config, const std::string& key, const std::string& value) {
  if (key == "channel") {
    config.channel = parse_channel(value);
  } else if (key == "p") {
    config.p = to_double(key, value);
  } else if (key == "eps") {
    config.eps = to_double(key, value);
  } else if (key == "n_min") {
    config.n_min = to_integer(key, value);
  } else if (key == "n_max") {
    config.n_max = to_integer(key, value);
  } else if (key == "k_list") {
    config.k_list = parse_k_list(value);
  } else if (key == "t_grid_size") {
    const long long g = to_integer(key, value);
    if (g < 2) throw std::invalid_argument("t_grid_size must be >= 2");
    config.t_grid_size = static_cast<std::size_t>(g);
  } else if (key == "output") {
    config.output = value;
  } else if (key == "mode") {
    config.mode = parse_sweep_mode(value);
  } else if (key == "method") {
    config.method = parse_method(value);
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

}  // namespace unext::tools
