#pragma once

// key=value run configuration. Files hold one pair per line, '#' starts a comment.

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace jacobi_riesz {

struct RunConfig {
  std::map<std::string, std::string> kv;

  bool has(const std::string& k) const { return kv.count(k) > 0; }
  void set(const std::string& k, const std::string& v) { kv[k] = v; }

  std::string str(const std::string& k, const std::string& def) const {
    auto it = kv.find(k);
    return it == kv.end() ? def : it->second;
  }

  double num(const std::string& k, double def) const {
    auto it = kv.find(k);
    if (it == kv.end()) return def;
    return parse_double(k, it->second);
  }

  int integer(const std::string& k, int def) const {
    auto it = kv.find(k);
    if (it == kv.end()) return def;
    try {
      std::size_t pos = 0;
      const int v = std::stoi(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ConfigurationError("config: " + k + " is not an integer: " + it->second);
    }
  }

  std::vector<double> list(const std::string& k, const std::vector<double>& def) const {
    auto it = kv.find(k);
    if (it == kv.end()) return def;
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(k, item));
    if (out.empty()) throw ConfigurationError("config: empty list for " + k);
    return out;
  }

  std::uint64_t seed() const {
    const std::string s = str("seed", "7");
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw ConfigurationError("config: bad seed " + s);
    }
  }

  // tolerance keys must be positive
  double tol(const std::string& k, double def) const {
    const double v = num(k, def);
    if (!(v > 0.0)) throw ConfigurationError("config: tolerance " + k + " must be positive");
    return v;
  }

  // entries of `over` replace ours
  void merge(const RunConfig& over) {
    for (const auto& [k, v] : over.kv) kv[k] = v;
  }

  static RunConfig from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigurationError("config: cannot read " + path);
    RunConfig c;
    std::string line;
    int no = 0;
    while (std::getline(f, line)) {
      ++no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto eq = line.find('=');
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (eq == std::string::npos)
        throw ConfigurationError("config: line " + std::to_string(no) + " is not key=value");
      c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return c;
  }

 private:
  static std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
  }
  static double parse_double(const std::string& k, const std::string& v) {
    try {
      std::size_t pos = 0;
      const double d = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("trailing");
      return d;
    } catch (const std::exception&) {
      throw ConfigurationError("config: " + k + " is not a number: " + v);
    }
  }
};

}  // namespace jacobi_riesz
