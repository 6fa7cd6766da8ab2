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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

#include "misrec/error.hpp"
#include "misrec/synth.hpp"

namespace misrec {
namespace {

SynthConfig Uniform100x1000() {
  SynthConfig cfg;
  cfg.user_count = 100;
  cfg.item_count = 1000;
  cfg.mean_profile_size = 20;
  cfg.misinfo_item_fraction = 0.1;
  cfg.popularity_exponent = 0.0;
  cfg.misinfo_popularity_boost = 1.0;
  cfg.seed = 7;
  return cfg;
}

std::vector<double> ItemCounts(const Dataset& ds) {
  std::vector<double> counts(ds.num_items());
  for (ItemIndex i = 0; i < ds.num_items(); ++i) {
    counts[i] = static_cast<double>(ds.item_users(i).size());
  }
  return counts;
}

TEST(Synth, InvalidConfigRejected) {
  SynthConfig cfg;
  cfg.user_count = 0;
  EXPECT_THROW(GenerateSynthetic(cfg), ConfigError);
  cfg = SynthConfig{};
  cfg.mean_profile_size = cfg.item_count + 1;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = SynthConfig{};
  cfg.misinfo_popularity_boost = 0.5;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = SynthConfig{};
  cfg.misinfo_item_fraction = 1.5;
  EXPECT_THROW(cfg.Validate(), ConfigError);
}

TEST(Synth, ShapeAndExactMisinfoCount) {
  const auto ds = GenerateSynthetic(Uniform100x1000());
  EXPECT_EQ(ds.num_users(), 100u);
  EXPECT_EQ(ds.num_items(), 1000u);
  const auto misinfo = std::count(ds.labels().begin(), ds.labels().end(),
                                  ItemLabel::kMisinformative);
  EXPECT_EQ(misinfo, 100);
  for (UserIndex u = 0; u < ds.num_users(); ++u) EXPECT_GE(ds.user_items(u).size(), 1u);
}

TEST(Synth, UniformPopularityPassesChiSquare) {
  const auto ds = GenerateSynthetic(Uniform100x1000());
  const auto counts = ItemCounts(ds);
  const double expected = static_cast<double>(ds.num_interactions()) / counts.size();
  double stat = 0.0;
  for (double c : counts) stat += (c - expected) * (c - expected) / expected;
  boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  const double p = boost::math::cdf(boost::math::complement(dist, stat));
  EXPECT_GT(p, 0.01) << "chi2 = " << stat;
}

TEST(Synth, DeterministicAndSeedSensitive) {
  auto cfg = Uniform100x1000();
  EXPECT_EQ(GenerateSynthetic(cfg), GenerateSynthetic(cfg));
  auto threaded = cfg;
  threaded.workers = 3;
  EXPECT_EQ(GenerateSynthetic(cfg), GenerateSynthetic(threaded));
  auto other = cfg;
  other.seed = 8;
  EXPECT_FALSE(GenerateSynthetic(cfg) == GenerateSynthetic(other));
}

TEST(Synth, NeutralSettingsMatchMisinfoFraction) {
  SynthConfig cfg = Uniform100x1000();
  cfg.user_count = 1000;  // 20000 interactions
  const auto ds = GenerateSynthetic(cfg);
  ASSERT_GE(ds.num_interactions(), 10000u);
  std::size_t hits = 0;
  for (UserIndex u = 0; u < ds.num_users(); ++u) {
    for (ItemIndex i : ds.user_items(u)) hits += ds.is_misinformative(i);
  }
  const double n = static_cast<double>(ds.num_interactions());
  const double share = hits / n;
  const double se = std::sqrt(0.1 * 0.9 / n);
  EXPECT_NEAR(share, 0.1, 3 * se);
}

TEST(Synth, BoostPutsMisinfoOnTop) {
  SynthConfig cfg = Uniform100x1000();
  cfg.popularity_exponent = 1.0;
  cfg.misinfo_popularity_boost = 50.0;
  const auto ds = GenerateSynthetic(cfg);
  const auto counts = ItemCounts(ds);
  std::vector<ItemIndex> order(counts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](ItemIndex a, ItemIndex b) { return counts[a] > counts[b]; });
  int misinfo_top = 0;
  for (int t = 0; t < 10; ++t) misinfo_top += ds.is_misinformative(order[t]);
  EXPECT_GE(misinfo_top, 8);
}

TEST(Synth, ConfigRoundTrip) {
  SynthConfig cfg = Uniform100x1000();
  cfg.misinfo_item_fraction = 0.1234567890123;
  cfg.popularity_exponent = 1.5;
  cfg.seed = 0xfedcba9876543210ULL;
  std::ostringstream out;
  WriteSynthConfig(cfg, out);
  std::istringstream in(out.str());
  EXPECT_EQ(ReadSynthConfig(in), cfg);
}

}  // namespace
}  // namespace misrec
