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

#include <sstream>

#include "misrec/error.hpp"
#include "misrec/feedback.hpp"
#include "oracles.hpp"

namespace misrec {
namespace {

SimConfig PopSim(int cycles, int accept) {
  SimConfig cfg;
  cfg.cycles = cycles;
  cfg.accept_count = accept;
  cfg.schedule.assign(cycles, TypicalConfig(RecommenderKind::kPop));
  cfg.cutoffs = {1, 2};
  return cfg;
}

TEST(RunCycle, PopularityToy) {
  // u1={i1,i2}, u2={i1,i2}, u3={i1}: u3 accepts i2.
  const auto ds = testing::DatasetFromProfiles({{0, 1}, {0, 1}, {0}}, 2, {1});
  const auto out = RunCycle(ds, TypicalConfig(RecommenderKind::kPop), 1, 1);
  EXPECT_EQ(out.dataset.num_interactions(), 6u);
  EXPECT_TRUE(out.dataset.HasInteraction(2, 1));
  EXPECT_TRUE(out.accepted[0].entries.empty());
  ASSERT_EQ(out.accepted[2].entries.size(), 1u);
  EXPECT_EQ(out.accepted[2].entries[0].item, 1u);
}

TEST(RunCycle, AccountingAndSuperset) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto ds = testing::RandomDataset(seed, 12, 25, 0.2);
    for (auto kind : {RecommenderKind::kRnd, RecommenderKind::kPop, RecommenderKind::kUB}) {
      auto rec = TypicalConfig(kind);
      rec.k = 4;
      const auto out = RunCycle(ds, rec, 3, seed, 2);
      std::size_t accepted = 0;
      for (UserIndex u = 0; u < ds.num_users(); ++u) {
        const auto& list = out.accepted[u].entries;
        const std::size_t unseen = ds.num_items() - ds.user_items(u).size();
        EXPECT_EQ(list.size(), std::min<std::size_t>(3, unseen));
        accepted += list.size();
        for (ItemIndex i : ds.user_items(u)) EXPECT_TRUE(out.dataset.HasInteraction(u, i));
        for (const auto& e : list) {
          EXPECT_FALSE(ds.HasInteraction(u, e.item));
          EXPECT_TRUE(out.dataset.HasInteraction(u, e.item));
        }
      }
      EXPECT_EQ(out.dataset.num_interactions(), ds.num_interactions() + accepted);
      EXPECT_EQ(out.dataset.num_users(), ds.num_users());
      EXPECT_EQ(out.dataset.num_items(), ds.num_items());
    }
  }
}

TEST(RunSimulation, ZeroCyclesIsOneReport) {
  const auto ds = testing::RandomDataset(2, 10, 20, 0.3);
  auto cfg = PopSim(0, 3);
  cfg.probes = {TypicalConfig(RecommenderKind::kPop)};
  const auto reports = RunSimulation(ds, cfg);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_FALSE(reports[0].grown_by);
  EXPECT_EQ(reports[0].stats.interaction_count, ds.num_interactions());
  ASSERT_EQ(reports[0].probes.size(), 1u);
  EXPECT_EQ(reports[0].probes[0].metrics.size(), 2u);
}

TEST(RunSimulation, GrowthAndProbes) {
  const auto ds = testing::RandomDataset(4, 15, 30, 0.2);
  const auto cfg = PopSim(3, 2);
  const auto reports = RunSimulation(ds, cfg);
  ASSERT_EQ(reports.size(), 4u);
  for (int c = 1; c <= 3; ++c) {
    EXPECT_EQ(reports[c].cycle, c);
    ASSERT_TRUE(reports[c].grown_by);
    EXPECT_GT(reports[c].stats.interaction_count, reports[c - 1].stats.interaction_count);
    EXPECT_LE(reports[c].stats.interaction_count,
              reports[c - 1].stats.interaction_count + 2 * ds.num_users());
  }
  EXPECT_DOUBLE_EQ(reports[0].profile_misinfo_ratio, ComputeStats(ds).MeanUserMisinfoRatio());
  // Same config, same output.
  std::ostringstream a, b;
  WriteSimulationCsv(reports, a);
  WriteSimulationCsv(RunSimulation(ds, cfg), b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')),
            "cycle,grown_by,rec,params,cutoff,profile_ratio,interactions,MC,MRD,MG");
}

TEST(RunSimulation, WorkersDoNotChangeOutput) {
  const auto ds = testing::RandomDataset(6, 20, 30, 0.2);
  SimConfig cfg;
  cfg.cycles = 2;
  auto mf = TypicalConfig(RecommenderKind::kMF);
  mf.mf.factors = 4;
  mf.mf.iterations = 3;
  auto ub = TypicalConfig(RecommenderKind::kUB);
  ub.k = 5;
  cfg.schedule = {mf, ub};
  cfg.probes = {mf, ub, TypicalConfig(RecommenderKind::kRnd)};
  std::ostringstream a, b;
  WriteSimulationCsv(RunSimulation(ds, cfg), a);
  cfg.workers = 3;
  WriteSimulationCsv(RunSimulation(ds, cfg), b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(SimConfig, Validation) {
  auto cfg = PopSim(2, 3);
  cfg.schedule.resize(1);
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = PopSim(2, 0);
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = PopSim(1, 1);
  cfg.cutoffs.clear();
  EXPECT_THROW(cfg.Validate(), ConfigError);
  EXPECT_NO_THROW(PopSim(2, 3).Validate());
}

TEST(CycleSeed, DistinctPerCycle) {
  EXPECT_NE(CycleSeed(1, 0), CycleSeed(1, 1));
  EXPECT_NE(CycleSeed(1, 0), CycleSeed(2, 0));
  EXPECT_EQ(CycleSeed(5, 3), CycleSeed(5, 3));
  const auto rnd = WithSeed(TypicalConfig(RecommenderKind::kRnd), 77);
  EXPECT_EQ(rnd.seed, 77u);
}

}  // namespace
}  // namespace misrec
