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

#include "misrec/profile_gen.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "misrec/error.hpp"
#include "misrec/random.hpp"

namespace misrec {

RatioSpec RatioSpec::Fraction(std::int64_t num, std::int64_t den) {
  if (!(den > 0 && num > 0 && num < den)) {
    throw ContractError("ratio must lie strictly between 0 and 1");
  }
  const std::int64_t g = std::gcd(num, den);
  RatioSpec r;
  r.num_ = num / g;
  r.den_ = den / g;
  return r;
}

namespace {

bool ParseDigits(std::string_view text, std::int64_t& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

RatioSpec RatioSpec::Parse(std::string_view text) {
  if (text == "none" || text == "\xe2\x88\x85") return RatioSpec();
  const auto fail = [&] {
    return ConfigError("ratio '" + std::string(text) +
                       "' is not 'none', 'p/q' or a decimal in (0, 1)");
  };
  std::int64_t num = 0;
  std::int64_t den = 0;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    if (!ParseDigits(text.substr(0, slash), num) || !ParseDigits(text.substr(slash + 1), den)) {
      throw fail();
    }
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15 || (whole != "0" && !whole.empty()) ||
        frac.find_first_not_of("0123456789") != std::string_view::npos ||
        !ParseDigits(frac, num)) {
      throw fail();
    }
    den = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
  } else {
    throw fail();
  }
  if (!(den > 0 && num > 0 && num < den)) throw fail();
  return Fraction(num, den);
}

double RatioSpec::value() const {
  return unconstrained() ? 0.0 : static_cast<double>(num_) / static_cast<double>(den_);
}

std::string RatioSpec::ToString() const {
  if (unconstrained()) return "none";
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<ProfileCounts> ResolveProfileCounts(std::int64_t misinfo_available,
                                                  std::int64_t neutral_available,
                                                  const RatioSpec& r) {
  if (r.unconstrained()) throw ContractError("ratio must be constrained");
  if (misinfo_available < 0 || neutral_available < 0) {
    throw ContractError("available counts must be non-negative");
  }
  const std::int64_t p = r.num();
  const std::int64_t q_minus_p = r.den() - r.num();
  const std::int64_t m = std::min(misinfo_available / p, neutral_available / q_minus_p);
  if (m == 0) return std::nullopt;
  return ProfileCounts{m * p, m * q_minus_p};
}

namespace {

std::vector<ItemIndex> SampleSorted(const std::vector<ItemIndex>& pool, std::int64_t count,
                                    Rng& rng) {
  std::vector<ItemIndex> items = pool;
  const auto n = items.size();
  const auto take = static_cast<std::size_t>(count);
  for (std::size_t k = 0; k < take; ++k) {
    std::swap(items[k], items[k + rng.UniformIndex(n - k)]);
  }
  items.resize(take);
  std::sort(items.begin(), items.end());
  return items;
}

}  // namespace

std::optional<UserProfile> GenerateProfile(const UserProfile& profile, const RatioSpec& r,
                                           std::uint64_t seed) {
  if (r.unconstrained()) return profile;
  auto counts = ResolveProfileCounts(static_cast<std::int64_t>(profile.misinformative.size()),
                                     static_cast<std::int64_t>(profile.neutral.size()), r);
  if (!counts) return std::nullopt;
  Rng rng(seed);
  UserProfile out;
  out.misinformative = SampleSorted(profile.misinformative, counts->misinformative, rng);
  out.neutral = SampleSorted(profile.neutral, counts->neutral, rng);
  return out;
}

Dataset BuildRatioDataset(const Dataset& ds, const RatioSpec& r, std::uint64_t seed) {
  if (r.unconstrained()) return ds;

  std::vector<std::string> kept_users;
  std::vector<std::vector<ItemIndex>> kept_profiles;
  for (UserIndex u = 0; u < ds.num_users(); ++u) {
    const std::uint64_t user_seed = DeriveSeed(seed, HashString(ds.user_id(u)));
    auto profile = GenerateProfile(ds.Profile(u), r, user_seed);
    if (!profile) continue;
    kept_users.push_back(ds.user_id(u));
    kept_profiles.push_back(profile->Items());
  }
  if (kept_users.empty()) {
    throw EmptyDatasetError("no user can satisfy ratio " + r.ToString());
  }

  // Re-index the surviving items, preserving their relative (lexicographic) order.
  std::vector<char> used(ds.num_items(), 0);
  for (const auto& profile : kept_profiles) {
    for (ItemIndex i : profile) used[i] = 1;
  }
  std::vector<ItemIndex> remap(ds.num_items(), 0);
  std::vector<std::string> item_ids;
  std::vector<ItemLabel> labels;
  for (ItemIndex i = 0; i < ds.num_items(); ++i) {
    if (!used[i]) continue;
    remap[i] = static_cast<ItemIndex>(item_ids.size());
    item_ids.push_back(ds.item_id(i));
    labels.push_back(ds.label(i));
  }
  for (auto& profile : kept_profiles) {
    for (ItemIndex& i : profile) i = remap[i];
  }
  return Dataset::FromIndexed(std::move(kept_users), std::move(item_ids), std::move(labels),
                              std::move(kept_profiles));
}

}  // namespace misrec
