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

#include "misrec/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "misrec/config.hpp"
#include "misrec/error.hpp"
#include "misrec/parallel.hpp"
#include "misrec/random.hpp"

namespace misrec {

namespace {

constexpr std::uint64_t kLabelStream = 0x6d697369'6e666fULL;

std::string PaddedId(char prefix, std::int64_t index, std::int64_t count) {
  const int width = static_cast<int>(std::to_string(std::max<std::int64_t>(count - 1, 0)).size());
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%c%0*lld", prefix, width, static_cast<long long>(index));
  return buf;
}

// Poisson draw by CDF inversion; normal approximation for large means where
// exp(-mean) underflows.
std::int64_t DrawPoisson(Rng& rng, double mean) {
  if (mean > 500.0) {
    const double u1 = rng.UniformOpenClosed();
    const double u2 = rng.UniformReal();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return std::max<std::int64_t>(0, std::llround(mean + std::sqrt(mean) * z));
  }
  const double u = rng.UniformReal();
  double p = std::exp(-mean);
  double cdf = p;
  std::int64_t k = 0;
  while (u >= cdf && k < 100000) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
    if (p == 0.0 && static_cast<double>(k) > mean) break;
  }
  return k;
}

}  // namespace

void SynthConfig::Validate() const {
  if (user_count <= 0) throw ConfigError("synth.users must be > 0");
  if (item_count <= 0) throw ConfigError("synth.items must be > 0");
  if (mean_profile_size < 1) throw ConfigError("synth.mean_profile_size must be >= 1");
  if (mean_profile_size > item_count) {
    throw ConfigError("synth.mean_profile_size must not exceed synth.items");
  }
  if (!(misinfo_item_fraction >= 0.0 && misinfo_item_fraction <= 1.0)) {
    throw ConfigError("synth.misinfo_fraction must lie in [0, 1]");
  }
  if (!(popularity_exponent >= 0.0) || !std::isfinite(popularity_exponent)) {
    throw ConfigError("synth.popularity_exponent must be >= 0");
  }
  if (!(misinfo_popularity_boost >= 1.0) || !std::isfinite(misinfo_popularity_boost)) {
    throw ConfigError("synth.misinfo_boost must be >= 1");
  }
  if (workers < 1) throw ConfigError("synth.workers must be >= 1");
}

Dataset GenerateSynthetic(const SynthConfig& cfg) {
  cfg.Validate();
  const auto n_users = static_cast<std::size_t>(cfg.user_count);
  const auto n_items = static_cast<std::size_t>(cfg.item_count);

  // Misinformative items: uniform subset of exactly round(fraction * items).
  const auto n_misinfo =
      static_cast<std::size_t>(std::llround(cfg.misinfo_item_fraction * cfg.item_count));
  std::vector<ItemIndex> order(n_items);
  std::iota(order.begin(), order.end(), 0);
  Rng label_rng(DeriveSeed(cfg.seed, kLabelStream));
  for (std::size_t k = 0; k < n_misinfo; ++k) {
    const auto pick = k + label_rng.UniformIndex(n_items - k);
    std::swap(order[k], order[pick]);
  }
  std::vector<ItemLabel> labels(n_items, ItemLabel::kNeutral);
  for (std::size_t k = 0; k < n_misinfo; ++k) labels[order[k]] = ItemLabel::kMisinformative;

  std::vector<double> weight(n_items);
  for (std::size_t j = 0; j < n_items; ++j) {
    weight[j] = std::pow(static_cast<double>(j + 1), -cfg.popularity_exponent);
    if (labels[j] == ItemLabel::kMisinformative) weight[j] *= cfg.misinfo_popularity_boost;
  }

  // Each user: weighted sampling without replacement via exponential keys
  // (the `size` largest log(U)/w are a successive-sampling draw).
  std::vector<std::vector<ItemIndex>> profiles(n_users);
  ParallelFor(n_users, cfg.workers, [&](std::size_t u) {
    Rng rng(DeriveSeed(cfg.seed, u));
    const auto size = static_cast<std::size_t>(std::clamp<std::int64_t>(
        DrawPoisson(rng, static_cast<double>(cfg.mean_profile_size)), 1, cfg.item_count));
    std::vector<std::pair<double, ItemIndex>> keys(n_items);
    for (std::size_t j = 0; j < n_items; ++j) {
      keys[j] = {std::log(rng.UniformOpenClosed()) / weight[j], static_cast<ItemIndex>(j)};
    }
    std::nth_element(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(size - 1),
                     keys.end(), std::greater<>());
    auto& profile = profiles[u];
    profile.reserve(size);
    for (std::size_t k = 0; k < size; ++k) profile.push_back(keys[k].second);
  });

  std::vector<std::string> user_ids(n_users);
  for (std::size_t u = 0; u < n_users; ++u) user_ids[u] = PaddedId('u', u, cfg.user_count);
  std::vector<std::string> item_ids(n_items);
  for (std::size_t j = 0; j < n_items; ++j) item_ids[j] = PaddedId('i', j, cfg.item_count);
  return Dataset::FromIndexed(std::move(user_ids), std::move(item_ids), std::move(labels),
                              std::move(profiles));
}

void WriteSynthConfig(const SynthConfig& cfg, std::ostream& out) {
  // Shortest text that parses back to the same double.
  auto real = [](double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  };
  out << "[synth]\n"
      << "users = " << cfg.user_count << '\n'
      << "items = " << cfg.item_count << '\n'
      << "mean_profile_size = " << cfg.mean_profile_size << '\n'
      << "misinfo_fraction = " << real(cfg.misinfo_item_fraction) << '\n'
      << "popularity_exponent = " << real(cfg.popularity_exponent) << '\n'
      << "misinfo_boost = " << real(cfg.misinfo_popularity_boost) << '\n'
      << "seed = " << cfg.seed << '\n';
}

SynthConfig ReadSynthConfig(std::istream& in) {
  return SynthConfigFromIni(IniConfig::Parse(in, "synth config"));
}

SynthConfig SynthConfigFromIni(const IniConfig& ini) {
  ini.RequireKnownKeys("synth", {"users", "items", "mean_profile_size", "misinfo_fraction",
                                 "popularity_exponent", "misinfo_boost", "seed", "workers"});
  SynthConfig cfg;
  cfg.user_count = ini.GetInt("synth", "users", cfg.user_count);
  cfg.item_count = ini.GetInt("synth", "items", cfg.item_count);
  cfg.mean_profile_size = ini.GetInt("synth", "mean_profile_size", cfg.mean_profile_size);
  cfg.misinfo_item_fraction = ini.GetDouble("synth", "misinfo_fraction", cfg.misinfo_item_fraction);
  cfg.popularity_exponent = ini.GetDouble("synth", "popularity_exponent", cfg.popularity_exponent);
  cfg.misinfo_popularity_boost = ini.GetDouble("synth", "misinfo_boost", cfg.misinfo_popularity_boost);
  cfg.seed = ini.GetUInt("synth", "seed", cfg.seed);
  cfg.workers = static_cast<int>(ini.GetInt("synth", "workers", cfg.workers));
  cfg.Validate();
  return cfg;
}

}  // namespace misrec
