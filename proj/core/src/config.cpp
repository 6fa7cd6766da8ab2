// Copyright 2026 The misrec Authors
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

#include "misrec/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "misrec/error.hpp"

namespace misrec {

namespace {

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

IniConfig IniConfig::Parse(std::istream& in, const std::string& name) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(name + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  IniConfig cfg;
  cfg.name_ = name;
  for (const auto& [section, child] : tree) {
    if (child.empty() && !child.data().empty()) {
      throw ConfigError(name + ": key '" + section + "' outside of any section");
    }
    auto& keys = cfg.sections_[section];
    for (const auto& [key, value] : child) keys[key] = Trim(value.data());
  }
  return cfg;
}

IniConfig IniConfig::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  return Parse(in, path);
}

bool IniConfig::HasSection(const std::string& section) const {
  return sections_.count(section) > 0;
}

bool IniConfig::Has(const std::string& section, const std::string& key) const {
  return Get(section, key).has_value();
}

std::vector<std::string> IniConfig::Keys(const std::string& section) const {
  std::vector<std::string> keys;
  auto it = sections_.find(section);
  if (it == sections_.end()) return keys;
  for (const auto& [key, value] : it->second) keys.push_back(key);
  return keys;
}

std::optional<std::string> IniConfig::Get(const std::string& section,
                                          const std::string& key) const {
  auto it = sections_.find(section);
  if (it == sections_.end()) return std::nullopt;
  auto kv = it->second.find(key);
  if (kv == it->second.end()) return std::nullopt;
  return kv->second;
}

std::string IniConfig::GetString(const std::string& section, const std::string& key,
                                 const std::string& fallback) const {
  return Get(section, key).value_or(fallback);
}

std::int64_t IniConfig::GetInt(const std::string& section, const std::string& key,
                               std::int64_t fallback) const {
  auto v = Get(section, key);
  return v ? ParseInt(*v, section + "." + key) : fallback;
}

std::uint64_t IniConfig::GetUInt(const std::string& section, const std::string& key,
                                 std::uint64_t fallback) const {
  auto v = Get(section, key);
  return v ? ParseUInt(*v, section + "." + key) : fallback;
}

double IniConfig::GetDouble(const std::string& section, const std::string& key,
                            double fallback) const {
  auto v = Get(section, key);
  return v ? ParseDouble(*v, section + "." + key) : fallback;
}

bool IniConfig::GetBool(const std::string& section, const std::string& key,
                        bool fallback) const {
  auto v = Get(section, key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw ConfigError(section + "." + key + ": expected a boolean, got '" + *v + "'");
}

std::vector<std::string> IniConfig::GetList(const std::string& section,
                                            const std::string& key) const {
  auto v = Get(section, key);
  return v ? SplitList(*v) : std::vector<std::string>{};
}

void IniConfig::RequireKnownKeys(const std::string& section,
                                 const std::vector<std::string>& allowed) const {
  for (const auto& key : Keys(section)) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(name_ + ": unknown key '" + key + "' in [" + section + "]");
    }
  }
}

void IniConfig::RequireKnownSections(const std::vector<std::string>& allowed) const {
  for (const auto& [section, keys] : sections_) {
    if (section.empty() && keys.empty()) continue;
    if (std::find(allowed.begin(), allowed.end(), section) == allowed.end()) {
      throw ConfigError(name_ + ": unknown section [" + section + "]");
    }
  }
}

std::int64_t ParseInt(const std::string& text, const std::string& what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(what + ": expected an integer, got '" + text + "'");
  }
  return value;
}

std::uint64_t ParseUInt(const std::string& text, const std::string& what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(what + ": expected a non-negative integer, got '" + text + "'");
  }
  return value;
}

double ParseDouble(const std::string& text, const std::string& what) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(what + ": expected a number, got '" + text + "'");
  }
  return value;
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    std::string token = Trim(text.substr(start, comma - start));
    if (!token.empty()) out.push_back(std::move(token));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace misrec
