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

#include "misrec/recommender.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "misrec/error.hpp"
#include "misrec/parallel.hpp"
#include "misrec/random.hpp"

namespace misrec {

std::string_view RecommenderToken(RecommenderKind kind) {
  switch (kind) {
    case RecommenderKind::kRnd:
      return "Rnd";
    case RecommenderKind::kPop:
      return "Pop";
    case RecommenderKind::kMF:
      return "MF";
    case RecommenderKind::kIB:
      return "IB";
    case RecommenderKind::kUB:
      return "UB";
  }
  return "?";
}

RecommenderKind ParseRecommenderKind(std::string_view token) {
  if (token == "Rnd") return RecommenderKind::kRnd;
  if (token == "Pop") return RecommenderKind::kPop;
  if (token == "MF" || token == "HKV") return RecommenderKind::kMF;
  if (token == "IB") return RecommenderKind::kIB;
  if (token == "UB") return RecommenderKind::kUB;
  throw ConfigError("unknown recommender '" + std::string(token) + "' (Rnd, Pop, MF, IB, UB)");
}

void RecommenderConfig::Validate() const {
  switch (kind) {
    case RecommenderKind::kUB:
    case RecommenderKind::kIB:
      if (k < 1) throw ConfigError("k must be >= 1");
      if (q < 1) throw ConfigError("q must be >= 1");
      break;
    case RecommenderKind::kMF:
      mf.Validate();
      break;
    case RecommenderKind::kRnd:
    case RecommenderKind::kPop:
      break;
  }
}

std::string RecommenderConfig::Params() const {
  std::ostringstream out;
  switch (kind) {
    case RecommenderKind::kUB:
    case RecommenderKind::kIB:
      out << "k=" << k << " sim=" << SimilarityToken(sim) << " q=" << q << " seed=" << seed;
      break;
    case RecommenderKind::kMF: {
      char buf[32];
      auto real = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%g", v);
        return std::string(buf);
      };
      out << "factors=" << mf.factors << " lambda=" << real(mf.lambda)
          << " iters=" << mf.iterations << " alpha=" << real(mf.alpha)
          << " init_scale=" << real(mf.init_scale) << " seed=" << mf.seed;
      break;
    }
    case RecommenderKind::kRnd:
    case RecommenderKind::kPop:
      out << "seed=" << seed;
      break;
  }
  return out.str();
}

std::string RecommenderConfig::Describe() const {
  return std::string(RecommenderToken(kind)) + " " + Params();
}

RecommenderConfig TypicalConfig(RecommenderKind kind, std::uint64_t seed) {
  RecommenderConfig cfg;
  cfg.kind = kind;
  cfg.k = 50;
  cfg.sim = SimilarityKind::kPearson;
  cfg.q = 1;
  cfg.seed = seed;
  cfg.mf = AlsConfig{};
  cfg.mf.factors = 50;
  cfg.mf.lambda = 0.1;
  cfg.mf.iterations = 20;
  cfg.mf.seed = seed;
  return cfg;
}

std::vector<ItemIndex> RecommendationList::Items() const {
  std::vector<ItemIndex> items;
  items.reserve(entries.size());
  for (const auto& e : entries) items.push_back(e.item);
  return items;
}

double EmphasizeWeight(double weight, int q) {
  double out = weight;
  for (int p = 1; p < q; ++p) out *= weight;
  return out;
}

Recommender::Recommender(std::shared_ptr<const Dataset> training, RecommenderConfig config)
    : training_(std::move(training)), config_(std::move(config)) {
  if (!training_ || training_->empty()) {
    throw FitError("cannot fit " + std::string(RecommenderToken(config_.kind)) +
                   " on an empty dataset");
  }
  config_.Validate();
}

void Recommender::CheckIndices(UserIndex u, ItemIndex i) const {
  if (u >= training_->num_users() || i >= training_->num_items()) {
    throw ContractError("score index out of range");
  }
}

RecommendationList Recommender::Rank(UserIndex u, std::size_t cutoff,
                                     std::vector<ScoredItem> candidates) {
  auto better = [](const ScoredItem& a, const ScoredItem& b) {
    return a.score > b.score || (a.score == b.score && a.item < b.item);
  };
  if (candidates.size() > cutoff) {
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(cutoff),
                      candidates.end(), better);
    candidates.resize(cutoff);
  } else {
    std::sort(candidates.begin(), candidates.end(), better);
  }
  return RecommendationList{u, cutoff, std::move(candidates)};
}

RecommendationList Recommender::RankAllUnseen(UserIndex u, std::size_t cutoff,
                                              bool drop_zero) const {
  if (cutoff < 1) throw ContractError("cutoff must be >= 1");
  const auto seen = training_->user_items(u);
  std::vector<ScoredItem> candidates;
  candidates.reserve(training_->num_items() - seen.size());
  auto next_seen = seen.begin();
  for (ItemIndex i = 0; i < training_->num_items(); ++i) {
    if (next_seen != seen.end() && *next_seen == i) {
      ++next_seen;
      continue;
    }
    const double s = Score(u, i);
    if (drop_zero && s == 0.0) continue;
    candidates.push_back({i, s});
  }
  return Rank(u, cutoff, std::move(candidates));
}

RecommendationList Recommender::Recommend(UserIndex u, std::size_t cutoff) const {
  if (u >= training_->num_users()) throw ContractError("user index out of range");
  return RankAllUnseen(u, cutoff, false);
}

std::vector<RecommendationList> Recommender::RecommendAll(std::size_t cutoff, int workers) const {
  std::vector<RecommendationList> lists(training_->num_users());
  ParallelFor(lists.size(), workers, [&](std::size_t u) {
    lists[u] = Recommend(static_cast<UserIndex>(u), cutoff);
  });
  return lists;
}

std::unique_ptr<Recommender> FitRecommender(std::shared_ptr<const Dataset> ds,
                                            const RecommenderConfig& cfg, int workers) {
  if (!ds || ds->empty()) {
    throw FitError("cannot fit " + std::string(RecommenderToken(cfg.kind)) +
                   " on an empty dataset");
  }
  switch (cfg.kind) {
    case RecommenderKind::kRnd:
      return std::make_unique<RandomRecommender>(std::move(ds), cfg);
    case RecommenderKind::kPop:
      return std::make_unique<PopularityRecommender>(std::move(ds), cfg);
    case RecommenderKind::kUB:
      return std::make_unique<UserKnnRecommender>(std::move(ds), cfg, workers);
    case RecommenderKind::kIB:
      return std::make_unique<ItemKnnRecommender>(std::move(ds), cfg, workers);
    case RecommenderKind::kMF:
      return std::make_unique<FactorRecommender>(std::move(ds), cfg, workers);
  }
  throw ContractError("unknown recommender kind");
}

// Rnd ------------------------------------------------------------------------

RandomRecommender::RandomRecommender(std::shared_ptr<const Dataset> ds,
                                     const RecommenderConfig& cfg)
    : Recommender(std::move(ds), cfg) {
  user_keys_.reserve(training().num_users());
  for (UserIndex u = 0; u < training().num_users(); ++u) {
    user_keys_.push_back(DeriveSeed(cfg.seed, HashString(training().user_id(u))));
  }
}

// A per-(user, item) hash in [0, 1): ordering by it is a seeded shuffle of
// the catalog that depends only on (seed, user id).
double RandomRecommender::Score(UserIndex u, ItemIndex i) const {
  CheckIndices(u, i);
  return static_cast<double>(DeriveSeed(user_keys_[u], i) >> 11) * 0x1.0p-53;
}

// Pop ------------------------------------------------------------------------

PopularityRecommender::PopularityRecommender(std::shared_ptr<const Dataset> ds,
                                             const RecommenderConfig& cfg)
    : Recommender(std::move(ds), cfg) {
  const auto& data = training();
  counts_.resize(data.num_items());
  for (ItemIndex i = 0; i < data.num_items(); ++i) counts_[i] = data.item_users(i).size();
  by_popularity_.resize(data.num_items());
  for (ItemIndex i = 0; i < data.num_items(); ++i) by_popularity_[i] = i;
  std::stable_sort(by_popularity_.begin(), by_popularity_.end(),
                   [&](ItemIndex a, ItemIndex b) { return counts_[a] > counts_[b]; });
}

double PopularityRecommender::Score(UserIndex u, ItemIndex i) const {
  CheckIndices(u, i);
  return static_cast<double>(counts_[i]);
}

RecommendationList PopularityRecommender::Recommend(UserIndex u, std::size_t cutoff) const {
  if (cutoff < 1) throw ContractError("cutoff must be >= 1");
  if (u >= training().num_users()) throw ContractError("user index out of range");
  RecommendationList list{u, cutoff, {}};
  for (ItemIndex i : by_popularity_) {
    if (list.entries.size() == cutoff) break;
    if (training().HasInteraction(u, i)) continue;
    list.entries.push_back({i, static_cast<double>(counts_[i])});
  }
  return list;
}

// UB -------------------------------------------------------------------------

UserKnnRecommender::UserKnnRecommender(std::shared_ptr<const Dataset> ds,
                                       const RecommenderConfig& cfg, int workers)
    : Recommender(std::move(ds), cfg) {
  neighborhoods_ = AllNeighborhoods(training(), Axis::kUsers, static_cast<std::size_t>(cfg.k),
                                    cfg.sim, workers);
}

double UserKnnRecommender::Score(UserIndex u, ItemIndex i) const {
  CheckIndices(u, i);
  double score = 0.0;
  for (const auto& nb : neighborhoods_[u].members) {
    if (training().HasInteraction(nb.index, i)) score += EmphasizeWeight(nb.weight, config().q);
  }
  return score;
}

RecommendationList UserKnnRecommender::Recommend(UserIndex u, std::size_t cutoff) const {
  if (cutoff < 1) throw ContractError("cutoff must be >= 1");
  if (u >= training().num_users()) throw ContractError("user index out of range");
  // Contributions are added neighbor by neighbor, the same order Score() uses,
  // so both paths produce bit-identical sums.
  std::vector<double> acc(training().num_items(), 0.0);
  std::vector<ItemIndex> touched;
  for (const auto& nb : neighborhoods_[u].members) {
    const double w = EmphasizeWeight(nb.weight, config().q);
    for (ItemIndex i : training().user_items(nb.index)) {
      if (acc[i] == 0.0) touched.push_back(i);
      acc[i] += w;
    }
  }
  std::vector<ScoredItem> candidates;
  candidates.reserve(touched.size());
  for (ItemIndex i : touched) {
    if (acc[i] != 0.0 && !training().HasInteraction(u, i)) candidates.push_back({i, acc[i]});
  }
  return Rank(u, cutoff, std::move(candidates));
}

// IB -------------------------------------------------------------------------

ItemKnnRecommender::ItemKnnRecommender(std::shared_ptr<const Dataset> ds,
                                       const RecommenderConfig& cfg, int workers)
    : Recommender(std::move(ds), cfg) {
  neighborhoods_ = AllNeighborhoods(training(), Axis::kItems, static_cast<std::size_t>(cfg.k),
                                    cfg.sim, workers);
  reverse_.resize(training().num_items());
  for (ItemIndex i = 0; i < training().num_items(); ++i) {
    for (const auto& nb : neighborhoods_[i].members) reverse_[nb.index].push_back(i);
  }
}

double ItemKnnRecommender::Score(UserIndex u, ItemIndex i) const {
  CheckIndices(u, i);
  double score = 0.0;
  for (const auto& nb : neighborhoods_[i].members) {
    if (training().HasInteraction(u, nb.index)) score += EmphasizeWeight(nb.weight, config().q);
  }
  return score;
}

RecommendationList ItemKnnRecommender::Recommend(UserIndex u, std::size_t cutoff) const {
  if (cutoff < 1) throw ContractError("cutoff must be >= 1");
  if (u >= training().num_users()) throw ContractError("user index out of range");
  // Only items whose neighborhood meets the profile can score above zero.
  std::vector<char> reached(training().num_items(), 0);
  std::vector<ItemIndex> candidates_idx;
  for (ItemIndex j : training().user_items(u)) {
    for (ItemIndex i : reverse_[j]) {
      if (!reached[i]) {
        reached[i] = 1;
        candidates_idx.push_back(i);
      }
    }
  }
  std::vector<ScoredItem> candidates;
  candidates.reserve(candidates_idx.size());
  for (ItemIndex i : candidates_idx) {
    if (training().HasInteraction(u, i)) continue;
    const double s = Score(u, i);
    if (s != 0.0) candidates.push_back({i, s});
  }
  return Rank(u, cutoff, std::move(candidates));
}

// MF -------------------------------------------------------------------------

FactorRecommender::FactorRecommender(std::shared_ptr<const Dataset> ds,
                                     const RecommenderConfig& cfg, int workers)
    : Recommender(std::move(ds), cfg) {
  AlsConfig als = cfg.mf;
  als.workers = workers;
  model_ = FitAls(training(), als);
}

double FactorRecommender::Score(UserIndex u, ItemIndex i) const {
  CheckIndices(u, i);
  return Predict(model_, u, i);
}

RecommendationList FactorRecommender::Recommend(UserIndex u, std::size_t cutoff) const {
  if (cutoff < 1) throw ContractError("cutoff must be >= 1");
  if (u >= training().num_users()) throw ContractError("user index out of range");
  const auto x = model_.user_factors.row(u);
  const auto seen = training().user_items(u);
  std::vector<ScoredItem> candidates;
  candidates.reserve(training().num_items() - seen.size());
  auto next_seen = seen.begin();
  for (ItemIndex i = 0; i < training().num_items(); ++i) {
    if (next_seen != seen.end() && *next_seen == i) {
      ++next_seen;
      continue;
    }
    candidates.push_back({i, x.dot(model_.item_factors.row(i))});
  }
  return Rank(u, cutoff, std::move(candidates));
}

}  // namespace misrec
