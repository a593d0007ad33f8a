#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "report.hpp"

namespace polarconv {

namespace detail {

inline std::string trim_ws(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline const std::set<std::string>& known_config_keys() {
  static const std::set<std::string> keys = {
      "seed", "fixture", "name", "out", "format", "horizon", "grid",
      "window.beta", "window.beta-prime",
      "space.kind", "space.dim", "space.p", "space.radius",
      "probe.count", "probe.seed", "probe.scale",
      "tol.delta", "tol.strong", "tol.weak", "tol.residual",
      "eps0",
      "sequence.kind", "sequence.a", "sequence.b", "sequence.p",
      "map.kind", "map.angle", "map.lambda", "map.x0",
      "sr.r", "sr.dbar", "sr.pairs", "sr.lens-samples",
      "duality.cases", "duality.p",
      "extract.eps0", "extract.stages", "extract.min-length",
      "bl.p", "bl.u", "bl.b",
  };
  return keys;
}

}  // namespace detail

// Key-value experiment configuration: one "key = value" per line, '#' starts
// a comment, dotted keys give the nesting. Unknown keys are rejected and the
// seed is mandatory, so a config never silently drifts from what runs.
struct ExperimentConfig {
  std::vector<std::pair<std::string, std::string>> entries;  // file order

  static ExperimentConfig parse_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::size_t hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = detail::trim_ws(line);
      if (line.empty()) continue;
      std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": expected 'key = value'");
      std::string key = detail::trim_ws(line.substr(0, eq));
      std::string value = detail::trim_ws(line.substr(eq + 1));
      if (key.empty() || value.empty())
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": empty key or value");
      if (detail::known_config_keys().count(key) == 0)
        throw ConfigError("config: unknown key '" + key + "'");
      for (const auto& e : cfg.entries)
        if (e.first == key)
          throw ConfigError("config: duplicate key '" + key + "'");
      cfg.entries.emplace_back(std::move(key), std::move(value));
    }
    cfg.validate();
    return cfg;
  }

  static ExperimentConfig load(const std::string& path) {
    return parse_text(read_text_file(path));
  }

  void validate() const {
    for (const auto& e : entries) {
      if (e.first.rfind("tol.", 0) == 0) {
        double v = parse_double(e.first, e.second);
        if (!(v > 0.0))
          throw ConfigError("config: tolerance '" + e.first + "' must be positive");
      }
    }
    if (has("seed")) (void)get_u64("seed");
  }

  bool has(const std::string& key) const {
    for (const auto& e : entries)
      if (e.first == key) return true;
    return false;
  }

  std::string get(const std::string& key) const {
    for (const auto& e : entries)
      if (e.first == key) return e.second;
    throw ConfigError("config: missing key '" + key + "'");
  }

  std::string get_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get(key) : fallback;
  }

  double get_double(const std::string& key) const {
    return parse_double(key, get(key));
  }
  double get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
  }

  int get_int(const std::string& key) const {
    double v = get_double(key);
    int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
      throw ConfigError("config: '" + key + "' must be an integer");
    return i;
  }
  int get_int_or(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
  }

  std::uint64_t get_u64(const std::string& key) const {
    const std::string& s = get(key);
    char* end = nullptr;
    unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0')
      throw ConfigError("config: '" + key + "' must be an unsigned integer");
    return static_cast<std::uint64_t>(v);
  }

  // Comma-separated list of reals, e.g. "0.6,0.2".
  std::vector<double> get_doubles(const std::string& key) const {
    std::vector<double> out;
    std::istringstream in(get(key));
    std::string cell;
    while (std::getline(in, cell, ','))
      out.push_back(parse_double(key, detail::trim_ws(cell)));
    if (out.empty()) throw ConfigError("config: '" + key + "' holds no numbers");
    return out;
  }

  // The seed is the one field every experiment must pin.
  std::uint64_t require_seed() const {
    if (!has("seed")) throw ConfigError("config: 'seed' is mandatory");
    return get_u64("seed");
  }

  void override_seed(std::uint64_t seed) {
    for (auto& e : entries) {
      if (e.first == "seed") {
        e.second = std::to_string(seed);
        return;
      }
    }
    entries.emplace_back("seed", std::to_string(seed));
  }

  // Canonical echo used inside reports.
  std::string echo() const {
    std::string out;
    for (const auto& e : entries) out += e.first + " = " + e.second + "\n";
    return out;
  }

 private:
  static double parse_double(const std::string& key, const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
      throw ConfigError("config: '" + key + "' must be a real number");
    return v;
  }
};

}  // namespace polarconv
