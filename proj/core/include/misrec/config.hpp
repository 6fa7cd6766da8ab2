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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace misrec {

// Read-only view over an INI file: `[section]` headers, `key = value`
// lines, `;` comments. Keys are taken verbatim, so dotted names such as
// `mf.factors` are plain keys. Conversion failures raise ConfigError.
class IniConfig {
 public:
  IniConfig() = default;

  static IniConfig Parse(std::istream& in, const std::string& name = "config");
  static IniConfig Load(const std::string& path);

  bool HasSection(const std::string& section) const;
  bool Has(const std::string& section, const std::string& key) const;
  std::vector<std::string> Keys(const std::string& section) const;

  std::optional<std::string> Get(const std::string& section, const std::string& key) const;
  std::string GetString(const std::string& section, const std::string& key,
                        const std::string& fallback) const;
  std::int64_t GetInt(const std::string& section, const std::string& key,
                      std::int64_t fallback) const;
  std::uint64_t GetUInt(const std::string& section, const std::string& key,
                        std::uint64_t fallback) const;
  double GetDouble(const std::string& section, const std::string& key, double fallback) const;
  bool GetBool(const std::string& section, const std::string& key, bool fallback) const;
  // Comma-separated list with surrounding whitespace trimmed; empty when absent.
  std::vector<std::string> GetList(const std::string& section, const std::string& key) const;

  // Rejects keys outside `allowed` in the given section.
  void RequireKnownKeys(const std::string& section,
                        const std::vector<std::string>& allowed) const;
  // Rejects sections outside `allowed`.
  void RequireKnownSections(const std::vector<std::string>& allowed) const;

  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

std::int64_t ParseInt(const std::string& text, const std::string& what);
std::uint64_t ParseUInt(const std::string& text, const std::string& what);
double ParseDouble(const std::string& text, const std::string& what);
std::vector<std::string> SplitList(const std::string& text);

}  // namespace misrec
