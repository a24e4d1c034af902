#include "radlab/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace radlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-'))
      return false;
  return true;
}

}  // namespace

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string ConfigValue::render() const {
  switch (type) {
    case Type::number:
      return format_full(num);
    case Type::boolean:
      return b ? "true" : "false";
    case Type::string:
      return str;
    case Type::list: {
      std::string out = "[";
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) out += ", ";
        out += format_full(list[i]);
      }
      return out + "]";
    }
  }
  return "";
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (!valid_key(key))
      throw ConfigError("config line " + std::to_string(lineno) + ": bad key '" + key + "'");
    if (cfg.kv_.count(key))
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key +
                        "'");

    ConfigValue cv;
    if (!val.empty() && val.front() == '[') {
      if (val.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) + ": unterminated list");
      cv.type = ConfigValue::Type::list;
      std::string body = val.substr(1, val.size() - 2);
      std::string item;
      std::istringstream items(body);
      while (std::getline(items, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        double d;
        if (!parse_number(item, d))
          throw ConfigError("config line " + std::to_string(lineno) + ": bad list entry '" +
                            item + "'");
        cv.list.push_back(d);
      }
    } else if (val == "true" || val == "false") {
      cv.type = ConfigValue::Type::boolean;
      cv.b = val == "true";
    } else {
      double d;
      if (parse_number(val, d)) {
        cv.type = ConfigValue::Type::number;
        cv.num = d;
      } else {
        cv.type = ConfigValue::Type::string;
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"')
          val = val.substr(1, val.size() - 2);
        cv.str = val;
      }
    }
    cfg.kv_.emplace(std::move(key), std::move(cv));
  }
  return cfg;
}

const ConfigValue& Config::at(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw ConfigError("missing config key: " + key);
  return it->second;
}

double Config::number(const std::string& key) const {
  const ConfigValue& v = at(key);
  if (v.type != ConfigValue::Type::number)
    throw ConfigError("config key '" + key + "' must be a number");
  return v.num;
}

double Config::number_or(const std::string& key, double dflt) {
  if (!has(key)) set_number(key, dflt);
  return number(key);
}

int Config::integer(const std::string& key) const {
  double v = number(key);
  double r = std::nearbyint(v);
  if (std::abs(v - r) > 1e-9)
    throw ConfigError("config key '" + key + "' must be an integer");
  return static_cast<int>(r);
}

int Config::integer_or(const std::string& key, int dflt) {
  if (!has(key)) set_number(key, dflt);
  return integer(key);
}

std::string Config::str(const std::string& key) const {
  const ConfigValue& v = at(key);
  if (v.type != ConfigValue::Type::string)
    throw ConfigError("config key '" + key + "' must be a string");
  return v.str;
}

std::string Config::str_or(const std::string& key, const std::string& dflt) {
  if (!has(key)) set_string(key, dflt);
  return str(key);
}

std::vector<double> Config::list(const std::string& key) const {
  const ConfigValue& v = at(key);
  if (v.type != ConfigValue::Type::list)
    throw ConfigError("config key '" + key + "' must be a list");
  return v.list;
}

std::vector<double> Config::list_or(const std::string& key, std::vector<double> dflt) {
  if (!has(key)) set_list(key, std::move(dflt));
  return list(key);
}

bool Config::flag_or(const std::string& key, bool dflt) {
  if (!has(key)) set_flag(key, dflt);
  const ConfigValue& v = at(key);
  if (v.type != ConfigValue::Type::boolean)
    throw ConfigError("config key '" + key + "' must be true or false");
  return v.b;
}

void Config::set_number(const std::string& key, double v) {
  ConfigValue cv;
  cv.type = ConfigValue::Type::number;
  cv.num = v;
  kv_[key] = cv;
}

void Config::set_string(const std::string& key, const std::string& v) {
  ConfigValue cv;
  cv.type = ConfigValue::Type::string;
  cv.str = v;
  kv_[key] = cv;
}

void Config::set_list(const std::string& key, std::vector<double> v) {
  ConfigValue cv;
  cv.type = ConfigValue::Type::list;
  cv.list = std::move(v);
  kv_[key] = cv;
}

void Config::set_flag(const std::string& key, bool v) {
  ConfigValue cv;
  cv.type = ConfigValue::Type::boolean;
  cv.b = v;
  kv_[key] = cv;
}

void Config::require_known(const std::set<std::string>& known) const {
  std::string bad;
  for (const auto& [key, value] : kv_)
    if (!known.count(key)) bad += (bad.empty() ? "" : ", ") + key;
  if (!bad.empty()) throw ConfigError("unknown config keys: " + bad);
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [key, value] : kv_) {
    out += key;
    out += " = ";
    out += value.render();
    out += "\n";
  }
  return out;
}

std::uint64_t Config::hash() const {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
  for (char c : canonical()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace radlab
