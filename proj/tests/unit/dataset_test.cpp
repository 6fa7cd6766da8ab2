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

#include "misrec/dataset.hpp"
#include "misrec/error.hpp"
#include "oracles.hpp"

namespace misrec {
namespace {

Dataset Load(const std::string& interactions, const std::string& labels) {
  std::istringstream a(interactions), b(labels);
  return LoadDataset(a, b);
}

TEST(LoadDataset, BasicIngestion) {
  const auto ds = Load("u1\ti1\nu1\ti2\nu2\ti1\n", "i2\tmisinfo\n");
  EXPECT_EQ(ds.num_users(), 2u);
  EXPECT_EQ(ds.num_items(), 2u);
  EXPECT_EQ(ds.num_interactions(), 3u);
  EXPECT_EQ(ds.label(*ds.FindItem("i2")), ItemLabel::kMisinformative);
  EXPECT_EQ(ds.label(*ds.FindItem("i1")), ItemLabel::kNeutral);
}

TEST(LoadDataset, DuplicateLinesCollapse) {
  const auto ds = Load("u1\ti1\nu1\ti1\n", "");
  EXPECT_EQ(ds.num_interactions(), 1u);
}

TEST(LoadDataset, LabelOnlyItemsAreRegistered) {
  const auto ds = Load("u1\ti1\n", "i9\tneutral\n");
  EXPECT_EQ(ds.num_items(), 2u);
  EXPECT_TRUE(ds.item_users(*ds.FindItem("i9")).empty());
}

TEST(LoadDataset, UnknownLabelIsParseErrorWithLine) {
  try {
    Load("u1\ti1\n", "i0\tneutral\ni1\tbogus\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(LoadDataset, WrongFieldCountIsParseError) {
  try {
    Load("u1\ti1\nu2\n", "");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(Load("u1\ti1\tx\n", ""), ParseError);
}

TEST(LoadDataset, EmptyInteractionsIsEmptyDatasetError) {
  EXPECT_THROW(Load("", "i1\tmisinfo\n"), EmptyDatasetError);
  EXPECT_THROW(Load("\n\n", ""), EmptyDatasetError);
}

TEST(LoadDataset, IndicesFollowLexicographicIdOrder) {
  const auto a = Load("zed\tb\nalpha\ta\nmid\tc\n", "");
  EXPECT_EQ(a.user_id(0), "alpha");
  EXPECT_EQ(a.user_id(2), "zed");
  const auto b = Load("mid\tc\nzed\tb\nalpha\ta\n", "");
  EXPECT_EQ(a, b);
}

TEST(Dataset, RoundTripThroughFiles) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto ds = testing::RandomDataset(seed, 7, 9, 0.6);
    std::ostringstream inter, labels;
    WriteInteractions(ds, inter);
    WriteLabels(ds, labels);
    std::istringstream a(inter.str()), b(labels.str());
    // Orphans do not survive the interaction file.
    const auto report = ValidateDataset(ds);
    if (!report.orphan_users.empty() || !report.orphan_items.empty()) continue;
    EXPECT_EQ(LoadDataset(a, b), ds) << "seed " << seed;
  }
}

TEST(Dataset, ConflictingLabelsRejected) {
  std::vector<std::pair<std::string, std::string>> inter{{"u", "i"}};
  std::vector<std::pair<std::string, ItemLabel>> labels{{"i", ItemLabel::kNeutral},
                                                        {"i", ItemLabel::kMisinformative}};
  EXPECT_THROW(Dataset::FromRecords(inter, labels), DataError);
}

TEST(Dataset, CsrViewsAgree) {
  const auto ds = testing::RandomDataset(5, 12, 15, 0.25);
  std::size_t total = 0;
  for (UserIndex u = 0; u < ds.num_users(); ++u) {
    for (ItemIndex i : ds.user_items(u)) {
      const auto users = ds.item_users(i);
      EXPECT_TRUE(std::binary_search(users.begin(), users.end(), u));
      ++total;
    }
  }
  EXPECT_EQ(total, ds.num_interactions());
}

TEST(Dataset, WithAddedInteractionsGrowsProfiles) {
  const auto ds = testing::DatasetFromProfiles({{0}, {1}}, 3, {2});
  const auto grown = ds.WithAddedInteractions({{2, 0}, {}});
  EXPECT_EQ(grown.num_interactions(), 3u);
  EXPECT_TRUE(grown.HasInteraction(0, 2));
  EXPECT_EQ(grown.labels()[2], ItemLabel::kMisinformative);
  EXPECT_EQ(grown.item_ids(), ds.item_ids());
}

TEST(Stats, PublishedCountDensities) {
  // Published user, item and interaction counts, density in percent.
  EXPECT_NEAR(Density(2921, 1014004, 1116658) * 100.0, 0.038, 0.001);
  EXPECT_NEAR(Density(2921, 5761, 10084) * 100.0, 0.060, 0.001);
  EXPECT_EQ(Density(0, 10, 0), 0.0);
  EXPECT_EQ(Density(10, 0, 0), 0.0);
}

TEST(Stats, EmptyDatasetHasZeroes) {
  const auto s = ComputeStats(Dataset());
  EXPECT_EQ(s.user_count, 0u);
  EXPECT_EQ(s.interaction_count, 0u);
  EXPECT_EQ(s.density, 0.0);
}

TEST(Stats, DensityMatchesBruteForceCount) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto ds = testing::RandomDataset(seed, 10, 30, 0.2);
    std::size_t cells = 0;
    for (UserIndex u = 0; u < ds.num_users(); ++u)
      for (ItemIndex i = 0; i < ds.num_items(); ++i) cells += ds.HasInteraction(u, i);
    const auto s = ComputeStats(ds);
    EXPECT_DOUBLE_EQ(s.density, static_cast<double>(cells) / (10.0 * 30.0));
    for (double r : s.per_user_misinfo_ratio) {
      EXPECT_GE(r, 0.0);
      EXPECT_LE(r, 1.0);
    }
  }
}

TEST(Stats, CsvRow) {
  const auto ds = Load("u1\ti1\nu1\ti2\nu2\ti1\n", "i2\tmisinfo\n");
  EXPECT_EQ(StatsCsvRow(ComputeStats(ds)), "2,2,3,75.000,1");
}

TEST(Validate, ReportsOrphansAndFraction) {
  const auto ds = Load("u1\ti1\nu1\ti2\nu2\ti1\n", "i2\tmisinfo\n");
  const auto r = ValidateDataset(ds);
  EXPECT_TRUE(r.orphan_users.empty());
  EXPECT_TRUE(r.orphan_items.empty());
  EXPECT_DOUBLE_EQ(r.misinfo_item_fraction, 0.5);

  const auto orphan = Load("u1\ti1\n", "i2\tneutral\n");
  EXPECT_EQ(ValidateDataset(orphan).orphan_items.size(), 1u);

  const auto user_orphan = testing::DatasetFromProfiles({{0}, {}}, 1);
  EXPECT_EQ(ValidateDataset(user_orphan).orphan_users.size(), 1u);
}

}  // namespace
}  // namespace misrec
