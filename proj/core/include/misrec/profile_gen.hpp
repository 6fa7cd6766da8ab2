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
#include <optional>
#include <string>
#include <string_view>

#include "misrec/dataset.hpp"

namespace misrec {

// Target misinformation share of a rebuilt profile, either unconstrained
// (no filtering) or an exact rational p/q with 0 < p < q in lowest terms.
class RatioSpec {
 public:
  // Unconstrained.
  RatioSpec() = default;

  // Throws ContractError unless 0 < num < den.
  static RatioSpec Fraction(std::int64_t num, std::int64_t den);

  // Accepts "none" (or "∅"), "p/q" and terminating decimals such as "0.2",
  // which are converted exactly (0.2 -> 1/5). Throws ConfigError.
  static RatioSpec Parse(std::string_view text);

  bool unconstrained() const { return den_ == 0; }
  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const;

  // "none" or "p/q".
  std::string ToString() const;

  friend bool operator==(const RatioSpec&, const RatioSpec&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 0;
};

struct ProfileCounts {
  std::int64_t misinformative = 0;
  std::int64_t neutral = 0;

  friend bool operator==(const ProfileCounts&, const ProfileCounts&) = default;
};

// Largest (misinformative, neutral) pair within the available counts whose
// ratio is exactly r, or nullopt when no pair with both counts >= 1 exists.
// Throws ContractError when r is unconstrained.
std::optional<ProfileCounts> ResolveProfileCounts(std::int64_t misinfo_available,
                                                  std::int64_t neutral_available,
                                                  const RatioSpec& r);

// Samples a profile with the resolved counts uniformly without replacement
// from each partition. nullopt means the user is dropped.
std::optional<UserProfile> GenerateProfile(const UserProfile& profile, const RatioSpec& r,
                                           std::uint64_t seed);

// Applies GenerateProfile to every user, keyed per user by (seed, user id),
// then removes dropped users and items left without interactions. The
// unconstrained ratio returns the input unchanged. Throws EmptyDatasetError
// when no user survives.
Dataset BuildRatioDataset(const Dataset& ds, const RatioSpec& r, std::uint64_t seed);

}  // namespace misrec
