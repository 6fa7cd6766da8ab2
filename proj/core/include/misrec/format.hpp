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

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

namespace misrec {

// Fixed-point text with `decimals` digits. Negative values that round to
// zero print without a sign; non-finite values print as "NA".
inline std::string FormatDecimal(double value, int decimals = 3) {
  if (!std::isfinite(value)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  std::string s(buf);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) {
    s.erase(0, 1);
  }
  return s;
}

inline std::string FormatDecimal(const std::optional<double>& value, int decimals = 3) {
  return value ? FormatDecimal(*value, decimals) : std::string("NA");
}

}  // namespace misrec
