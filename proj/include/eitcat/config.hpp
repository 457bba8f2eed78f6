// Copyright 2026 The eitcat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eitcat/error.hpp"
#include "eitcat/params.hpp"

namespace eitcat {

/// Flat `key = value` configuration. `#` starts a comment; keys are unique.
class Config {
public:
  static Config parse(std::istream& in, const std::string& source = "<config>") {
    Config cfg;
    cfg.source_ = source;
    std::ostringstream raw;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      raw << line << '\n';
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos)
        line.erase(hash);
      const std::string body = trim(line);
      if (body.empty()) continue;
      const auto eq = body.find('=');
      if (eq == std::string::npos)
        throw ConfigError(where(source, lineno) + "expected 'key = value'");
      const std::string key = trim(body.substr(0, eq));
      const std::string value = trim(body.substr(eq + 1));
      if (key.empty()) throw ConfigError(where(source, lineno) + "empty key");
      if (!cfg.values_.emplace(key, Entry{value, lineno}).second)
        throw ConfigError(where(source, lineno) + "duplicate key '" + key + "'");
    }
    cfg.raw_ = raw.str();
    return cfg;
  }

  static Config load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return parse(in, path.string());
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  void set(const std::string& key, const std::string& value) {
    values_[key] = Entry{value, 0};
  }

  std::string text(const std::string& key) const { return lookup(key).value; }
  std::string text(const std::string& key, const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
  }

  double number(const std::string& key) const {
    const Entry& e = lookup(key);
    double out = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
      throw ConfigError(where(source_, e.line) + "key '" + key +
                        "' expects a number, got '" + e.value + "'");
    return out;
  }
  double number(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  /// Whitespace-separated list of numbers.
  std::vector<double> numbers(const std::string& key) const {
    const Entry& e = lookup(key);
    std::vector<double> out;
    std::istringstream in(e.value);
    std::string token;
    while (in >> token) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ConfigError(where(source_, e.line) + "key '" + key +
                          "' expects numbers, got '" + token + "'");
      out.push_back(v);
    }
    return out;
  }

  std::size_t count(const std::string& key, std::size_t fallback) const {
    if (!has(key)) return fallback;
    const double v = number(key);
    if (!(v >= 0.0) || v != static_cast<double>(static_cast<std::size_t>(v)))
      throw ConfigError("key '" + key + "' expects a non-negative integer");
    return static_cast<std::size_t>(v);
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = text(key);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ConfigError("key '" + key + "' expects true/false, got '" + v + "'");
  }

  /// Keys present in the file that no accessor has read.
  std::vector<std::string> unused_keys() const {
    std::vector<std::string> out;
    for (const auto& [k, e] : values_)
      if (!used_.count(k)) out.push_back(k);
    return out;
  }

  const std::string& raw() const { return raw_; }

  /// FNV-1a 64 of the file text.
  std::uint64_t hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : raw_) {
      h ^= ch;
      h *= 1099511628211ULL;
    }
    return h;
  }

private:
  struct Entry {
    std::string value;
    int line = 0;
  };

  const Entry& lookup(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end())
      throw ConfigError(source_ + ": missing key '" + key + "'");
    used_.insert(key);
    return it->second;
  }

  static std::string where(const std::string& source, int line) {
    return source + ":" + std::to_string(line) + ": ";
  }

  static std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
  }

  std::string source_;
  std::string raw_;
  std::map<std::string, Entry> values_;
  mutable std::set<std::string> used_;
};

inline PhysicalParams load_params(const Config& cfg) {
  PhysicalParams p;
  p.g2n = cfg.number("g2n");
  p.density = cfg.number("density", 0.0);
  p.v0 = cfg.number("v0");
  p.c = cfg.number("c");
  p.mu[0][0] = cfg.number("mu11", 0.0);
  p.mu[0][1] = cfg.number("mu12", 0.0);
  p.mu[1][0] = cfg.number("mu21", p.mu[0][1]);
  p.mu[1][1] = cfg.number("mu22", 0.0);
  p.mu_b = cfg.number("mu_b", 0.0);
  p.mu_bj = {cfg.number("mu_b1", 0.0), cfg.number("mu_b2", 0.0)};
  p.gamma = cfg.number("gamma", 0.0);
  p.length = cfg.number("length");
  p.delta = {cfg.number("delta1", 0.0), cfg.number("delta2", 0.0)};
  p.dk = {cfg.number("dk1", 0.0), cfg.number("dk2", 0.0)};
  p.lambda_probe = cfg.number("lambda_probe", 1e-6);
  p.delta_v = cfg.number("delta_v", 0.0);
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid physical parameters: ") + e.what());
  }
  return p;
}

/// Reads `<prefix>.shape` (constant | tanh | double), `<prefix>.omega_in`,
/// `<prefix>.omega_out`, `<prefix>.center`, `<prefix>.width`.
inline ControlProfile load_profile(const Config& cfg, const std::string& prefix) {
  ControlProfile prof;
  const std::string shape = cfg.text(prefix + ".shape", "constant");
  if (shape == "constant") prof.shape = ProfileShape::Constant;
  else if (shape == "tanh") prof.shape = ProfileShape::TanhRamp;
  else if (shape == "double") prof.shape = ProfileShape::DoubleRamp;
  else
    throw ConfigError("key '" + prefix + ".shape' must be constant, tanh or "
                      "double, got '" + shape + "'");
  prof.omega_in = cfg.number(prefix + ".omega_in");
  prof.omega_out = cfg.number(prefix + ".omega_out", prof.omega_in);
  prof.center = cfg.number(prefix + ".center", 0.0);
  prof.width = cfg.number(prefix + ".width", 1.0);
  try {
    prof.validate();
  } catch (const DomainError& e) {
    throw ConfigError("profile '" + prefix + "': " + e.what());
  }
  return prof;
}

}  // namespace eitcat
