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
#include <string>

#include "misrec/config.hpp"
#include "misrec/dataset.hpp"

namespace misrec {

// Parameters of the synthetic interaction generator.
//
// Items are ranked 1..item_count by id; an item of rank k is sampled with
// weight k^-popularity_exponent, multiplied by misinfo_popularity_boost when
// it is misinformative. Each user draws a profile size around
// mean_profile_size and then that many distinct items by weight.
struct SynthConfig {
  std::int64_t user_count = 1000;
  std::int64_t item_count = 5000;
  std::int64_t mean_profile_size = 20;
  double misinfo_item_fraction = 0.1;
  double popularity_exponent = 1.0;
  double misinfo_popularity_boost = 1.0;
  std::uint64_t seed = 1;
  // Generation threads; output does not depend on it.
  int workers = 1;

  // Throws ConfigError naming the first violated constraint.
  void Validate() const;

  friend bool operator==(const SynthConfig&, const SynthConfig&) = default;
};

Dataset GenerateSynthetic(const SynthConfig& cfg);

// Provenance file: an INI [synth] section with every field.
void WriteSynthConfig(const SynthConfig& cfg, std::ostream& out);
SynthConfig ReadSynthConfig(std::istream& in);
// Reads and validates the [synth] section.
SynthConfig SynthConfigFromIni(const IniConfig& ini);

}  // namespace misrec
