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
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "misrec/als.hpp"
#include "misrec/dataset.hpp"
#include "misrec/similarity.hpp"

namespace misrec {

enum class RecommenderKind { kRnd, kPop, kMF, kIB, kUB };

// "Rnd", "Pop", "MF", "IB", "UB". "HKV" parses as MF.
std::string_view RecommenderToken(RecommenderKind kind);
RecommenderKind ParseRecommenderKind(std::string_view token);

struct RecommenderConfig {
  RecommenderKind kind = RecommenderKind::kPop;
  // Neighborhood parameters (UB, IB).
  int k = 50;
  SimilarityKind sim = SimilarityKind::kPearson;
  int q = 1;
  // Rnd shuffle seed.
  std::uint64_t seed = 1;
  AlsConfig mf;

  // Throws ConfigError on out-of-range parameters for this kind.
  void Validate() const;

  // Parameters relevant to the kind plus the seed, e.g.
  // "k=50 sim=pearson q=1 seed=1" or
  // "factors=50 lambda=0.1 iters=20 alpha=40 init_scale=0.1 seed=1".
  std::string Params() const;
  // Token and parameters, e.g. "UB k=50 sim=pearson q=1 seed=1".
  std::string Describe() const;

  friend bool operator==(const RecommenderConfig&, const RecommenderConfig&) = default;
};

// The conventional configuration of each kind: 50 neighbors with Pearson
// similarity and q = 1, or 50 factors with lambda 0.1 and 20 iterations.
RecommenderConfig TypicalConfig(RecommenderKind kind, std::uint64_t seed = 1);

struct ScoredItem {
  ItemIndex item;
  double score;

  friend bool operator==(const ScoredItem&, const ScoredItem&) = default;
};

// Ranked items for one user, best first; ties ordered by ascending item.
struct RecommendationList {
  UserIndex user = 0;
  std::size_t cutoff = 0;
  std::vector<ScoredItem> entries;

  std::vector<ItemIndex> Items() const;
};

// A recommender fitted on one dataset. Fitted state is immutable, so
// Recommend may be called concurrently.
class Recommender {
 public:
  virtual ~Recommender() = default;

  const RecommenderConfig& config() const { return config_; }
  const Dataset& training() const { return *training_; }

  // Model score of (u, i); throws ContractError for unknown indices.
  virtual double Score(UserIndex u, ItemIndex i) const = 0;

  // Top `cutoff` unseen items of u. Throws ContractError when cutoff < 1.
  virtual RecommendationList Recommend(UserIndex u, std::size_t cutoff) const;

  // Lists for every user of the training set.
  std::vector<RecommendationList> RecommendAll(std::size_t cutoff, int workers = 1) const;

 protected:
  Recommender(std::shared_ptr<const Dataset> training, RecommenderConfig config);

  void CheckIndices(UserIndex u, ItemIndex i) const;
  // Keeps the best `cutoff` of `candidates` under (score desc, item asc).
  static RecommendationList Rank(UserIndex u, std::size_t cutoff,
                                 std::vector<ScoredItem> candidates);
  // Scores every unseen item with Score(); drops zeros when asked.
  RecommendationList RankAllUnseen(UserIndex u, std::size_t cutoff, bool drop_zero) const;

 private:
  std::shared_ptr<const Dataset> training_;
  RecommenderConfig config_;
};

// Fits the configured recommender. Throws FitError on an empty dataset.
std::unique_ptr<Recommender> FitRecommender(std::shared_ptr<const Dataset> ds,
                                            const RecommenderConfig& cfg, int workers = 1);

// w^q for the neighborhood models.
double EmphasizeWeight(double weight, int q);

class RandomRecommender final : public Recommender {
 public:
  RandomRecommender(std::shared_ptr<const Dataset> ds, const RecommenderConfig& cfg);
  double Score(UserIndex u, ItemIndex i) const override;

 private:
  std::vector<std::uint64_t> user_keys_;
};

class PopularityRecommender final : public Recommender {
 public:
  PopularityRecommender(std::shared_ptr<const Dataset> ds, const RecommenderConfig& cfg);
  double Score(UserIndex u, ItemIndex i) const override;
  RecommendationList Recommend(UserIndex u, std::size_t cutoff) const override;

  std::size_t count(ItemIndex i) const { return counts_.at(i); }

 private:
  std::vector<std::size_t> counts_;
  std::vector<ItemIndex> by_popularity_;  // (count desc, item asc)
};

// Non-normalized user-based kNN: s(u,i) = sum_{v in N(u;k)} s(v,i) w(u,v)^q.
class UserKnnRecommender final : public Recommender {
 public:
  UserKnnRecommender(std::shared_ptr<const Dataset> ds, const RecommenderConfig& cfg,
                     int workers = 1);
  double Score(UserIndex u, ItemIndex i) const override;
  RecommendationList Recommend(UserIndex u, std::size_t cutoff) const override;

  const Neighborhood& neighborhood(UserIndex u) const { return neighborhoods_.at(u); }

 private:
  std::vector<Neighborhood> neighborhoods_;
};

// Non-normalized item-based kNN: s(u,i) = sum_{j in N(i;k)} s(u,j) w(i,j)^q.
class ItemKnnRecommender final : public Recommender {
 public:
  ItemKnnRecommender(std::shared_ptr<const Dataset> ds, const RecommenderConfig& cfg,
                     int workers = 1);
  double Score(UserIndex u, ItemIndex i) const override;
  RecommendationList Recommend(UserIndex u, std::size_t cutoff) const override;

  const Neighborhood& neighborhood(ItemIndex i) const { return neighborhoods_.at(i); }

 private:
  std::vector<Neighborhood> neighborhoods_;
  // For each item j, the items whose neighborhood contains j.
  std::vector<std::vector<ItemIndex>> reverse_;
};

// Ranks by the ALS prediction x_u . y_i.
class FactorRecommender final : public Recommender {
 public:
  FactorRecommender(std::shared_ptr<const Dataset> ds, const RecommenderConfig& cfg,
                    int workers = 1);
  double Score(UserIndex u, ItemIndex i) const override;
  RecommendationList Recommend(UserIndex u, std::size_t cutoff) const override;

  const FactorModel& model() const { return model_; }

 private:
  FactorModel model_;
};

}  // namespace misrec
