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

#include <vector>

#include "misrec/error.hpp"
#include "misrec/similarity.hpp"
#include "oracles.hpp"

namespace misrec {
namespace {

constexpr SimilarityKind kKinds[] = {SimilarityKind::kJaccard, SimilarityKind::kCosine,
                                     SimilarityKind::kPearson};

std::vector<std::uint32_t> V(std::initializer_list<std::uint32_t> xs) { return xs; }

TEST(Similarity, Examples) {
  EXPECT_DOUBLE_EQ(Similarity(V({1, 2}), V({1, 2}), SimilarityKind::kJaccard, 4), 1.0);
  EXPECT_DOUBLE_EQ(Similarity(V({1, 2}), V({1, 2}), SimilarityKind::kCosine, 4), 1.0);
  EXPECT_DOUBLE_EQ(Similarity(V({1, 2}), V({1, 2}), SimilarityKind::kPearson, 4), 1.0);
  EXPECT_EQ(Similarity(V({0}), V({1}), SimilarityKind::kJaccard, 4), 0.0);
  EXPECT_EQ(Similarity(V({0}), V({1}), SimilarityKind::kCosine, 4), 0.0);
  EXPECT_EQ(Similarity(V({1, 2}), V({1, 3}), SimilarityKind::kPearson, 4), 0.0);
}

TEST(Similarity, DegenerateFormsAreZero) {
  for (auto kind : kKinds) {
    EXPECT_EQ(Similarity(V({}), V({}), kind, 3), 0.0);
    EXPECT_EQ(Similarity(V({}), V({1}), kind, 3), 0.0);
  }
  // Zero variance: all-ones vector.
  EXPECT_EQ(Similarity(V({0, 1, 2}), V({0, 1}), SimilarityKind::kPearson, 3), 0.0);
  EXPECT_THROW(Similarity(V({5}), V({1}), SimilarityKind::kJaccard, 3), ContractError);
}

TEST(Similarity, MatchesDenseOracleSymmetricAndInRange) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto ds = testing::RandomDataset(seed, 2, 9, 0.45);
    const auto a = ds.user_items(0);
    const auto b = ds.user_items(1);
    const auto da = testing::DenseRow(ds, Axis::kUsers, 0);
    const auto db = testing::DenseRow(ds, Axis::kUsers, 1);
    for (auto kind : kKinds) {
      const double s = Similarity(a, b, kind, 9);
      EXPECT_NEAR(s, testing::DenseSimilarity(da, db, kind), 1e-12);
      EXPECT_EQ(s, Similarity(b, a, kind, 9));
      EXPECT_LE(s, 1.0 + 1e-15);
      EXPECT_GE(s, kind == SimilarityKind::kPearson ? -1.0 - 1e-15 : 0.0);
    }
  }
}

TEST(TopKNeighbors, ToyExample) {
  // u1={i1,i2}, u2={i1,i2,i3}, u3={i4}
  const auto ds = testing::DatasetFromProfiles({{0, 1}, {0, 1, 2}, {3}}, 4);
  const auto n = TopKNeighbors(ds, Axis::kUsers, 0, 2, SimilarityKind::kJaccard);
  ASSERT_EQ(n.members.size(), 1u);
  EXPECT_EQ(n.members[0].index, 1u);
  EXPECT_DOUBLE_EQ(n.members[0].weight, 2.0 / 3.0);
}

TEST(TopKNeighbors, EmptyAnchorAndTies) {
  const auto ds = testing::DatasetFromProfiles({{}, {0}, {0}, {0}}, 2);
  EXPECT_TRUE(TopKNeighbors(ds, Axis::kUsers, 0, 3, SimilarityKind::kCosine).members.empty());
  const auto n = TopKNeighbors(ds, Axis::kUsers, 3, 1, SimilarityKind::kCosine);
  ASSERT_EQ(n.members.size(), 1u);
  EXPECT_EQ(n.members[0].index, 1u);
  EXPECT_THROW(TopKNeighbors(ds, Axis::kUsers, 9, 1, SimilarityKind::kCosine), ContractError);
}

TEST(TopKNeighbors, MatchesBruteForce) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto ds = testing::RandomDataset(seed, 8, 12, 0.35);
    for (auto axis : {Axis::kUsers, Axis::kItems}) {
      const std::size_t count = axis == Axis::kUsers ? 8 : 12;
      for (auto kind : kKinds) {
        for (std::size_t k : {1u, 3u, 20u}) {
          const auto all = AllNeighborhoods(ds, axis, k, kind, 2);
          for (std::uint32_t a = 0; a < count; ++a) {
            const auto want = testing::BruteNeighbors(ds, axis, a, k, kind);
            const auto& got = all[a].members;
            ASSERT_EQ(got.size(), want.size()) << "seed " << seed;
            for (std::size_t t = 0; t < got.size(); ++t) {
              EXPECT_EQ(got[t].index, want[t].index) << "seed " << seed;
              EXPECT_NEAR(got[t].weight, want[t].weight, 1e-12);
              EXPECT_GT(got[t].weight, 0.0);
              EXPECT_NE(got[t].index, a);
            }
          }
        }
      }
    }
  }
}

}  // namespace
}  // namespace misrec
