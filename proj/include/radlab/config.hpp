// Experiment configuration: a flat text file of dotted keys,
//
//   # comment
//   experiment = verify-support
//   metric.n = 3
//   metric.psi = [1, 0, 1]
//   grid.N = 256
//
// Values are numbers, bare or quoted strings, booleans, or numeric lists.
// Unknown keys are rejected against the experiment's declared schema, and the
// fully resolved configuration (defaults included) serializes canonically so
// reports can embed a re-runnable copy and a stable hash.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace radlab {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ConfigValue {
  enum class Type { number, string, list, boolean };
  Type type = Type::number;
  double num = 0.0;
  bool b = false;
  std::string str;
  std::vector<double> list;

  std::string render() const;
};

class Config {
public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const { return kv_.count(key) > 0; }

  double number(const std::string& key) const;
  double number_or(const std::string& key, double dflt);
  int integer(const std::string& key) const;
  int integer_or(const std::string& key, int dflt);
  std::string str(const std::string& key) const;
  std::string str_or(const std::string& key, const std::string& dflt);
  std::vector<double> list(const std::string& key) const;
  std::vector<double> list_or(const std::string& key, std::vector<double> dflt);
  bool flag_or(const std::string& key, bool dflt);

  void set_number(const std::string& key, double v);
  void set_string(const std::string& key, const std::string& v);
  void set_list(const std::string& key, std::vector<double> v);
  void set_flag(const std::string& key, bool v);

  // rejects keys outside `known`; call after all defaults are resolved
  void require_known(const std::set<std::string>& known) const;

  std::string canonical() const;  // sorted "key = value" lines
  std::uint64_t hash() const;     // FNV-1a 64 over the canonical form

private:
  const ConfigValue& at(const std::string& key) const;
  std::map<std::string, ConfigValue> kv_;
};

std::string format_full(double v);  // %.17g, the CSV serialization everywhere

}  // namespace radlab
