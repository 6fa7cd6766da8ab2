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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace misrec {

using UserIndex = std::uint32_t;
using ItemIndex = std::uint32_t;

enum class ItemLabel : std::uint8_t { kNeutral, kMisinformative };

// Token used in label files: "misinfo" or "neutral".
std::string_view LabelToken(ItemLabel label);
std::optional<ItemLabel> ParseLabelToken(std::string_view token);

// One user's interactions split by item label. Both lists are sorted.
struct UserProfile {
  std::vector<ItemIndex> misinformative;
  std::vector<ItemIndex> neutral;

  std::size_t size() const { return misinformative.size() + neutral.size(); }
  // All items, sorted ascending.
  std::vector<ItemIndex> Items() const;
};

// Sparse binary user x item interaction matrix with a label per item.
//
// Dense indices follow the lexicographic order of the external ids, so two
// datasets built from the same records always agree on indexing. The object
// is immutable once built and may be shared read-only between threads.
class Dataset {
 public:
  Dataset() = default;

  // Builds a dataset from external-id records. Duplicate interactions
  // collapse to one cell, items that appear only in `labels` are registered
  // with no interactions and items absent from `labels` are neutral.
  // Conflicting labels for one item raise DataError.
  static Dataset FromRecords(
      std::span<const std::pair<std::string, std::string>> interactions,
      std::span<const std::pair<std::string, ItemLabel>> labels);

  // Builds a dataset from already-indexed parts. `user_ids` and `item_ids`
  // must be strictly increasing; every profile entry must be a valid item.
  // Profiles are sorted and deduplicated.
  static Dataset FromIndexed(std::vector<std::string> user_ids,
                             std::vector<std::string> item_ids,
                             std::vector<ItemLabel> labels,
                             std::vector<std::vector<ItemIndex>> profiles);

  std::size_t num_users() const { return user_ids_.size(); }
  std::size_t num_items() const { return item_ids_.size(); }
  std::size_t num_interactions() const { return user_items_.size(); }
  bool empty() const { return user_ids_.empty(); }

  const std::string& user_id(UserIndex u) const { return user_ids_.at(u); }
  const std::string& item_id(ItemIndex i) const { return item_ids_.at(i); }
  const std::vector<std::string>& user_ids() const { return user_ids_; }
  const std::vector<std::string>& item_ids() const { return item_ids_; }

  std::optional<UserIndex> FindUser(std::string_view id) const;
  std::optional<ItemIndex> FindItem(std::string_view id) const;

  ItemLabel label(ItemIndex i) const { return labels_.at(i); }
  bool is_misinformative(ItemIndex i) const {
    return labels_.at(i) == ItemLabel::kMisinformative;
  }
  std::span<const ItemLabel> labels() const { return labels_; }

  // Items of user u, sorted ascending.
  std::span<const ItemIndex> user_items(UserIndex u) const;
  // Users of item i, sorted ascending.
  std::span<const UserIndex> item_users(ItemIndex i) const;

  bool HasInteraction(UserIndex u, ItemIndex i) const;
  UserProfile Profile(UserIndex u) const;

  // Copy with extra interactions per user; `additions` has one entry per
  // user. Users, items and labels are unchanged.
  Dataset WithAddedInteractions(const std::vector<std::vector<ItemIndex>>& additions) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<std::string> user_ids_;
  std::vector<std::string> item_ids_;
  std::vector<ItemLabel> labels_;
  // CSR by user.
  std::vector<std::size_t> user_offsets_{0};
  std::vector<ItemIndex> user_items_;
  // CSR by item.
  std::vector<std::size_t> item_offsets_{0};
  std::vector<UserIndex> item_users_;
};

// Ingestion from tab-separated text. `source_name` only labels errors.
Dataset LoadDataset(std::istream& interactions, std::istream& labels,
                    const std::string& interactions_name = "interactions",
                    const std::string& labels_name = "labels");
Dataset LoadDatasetFiles(const std::string& interactions_path,
                         const std::string& labels_path);

void WriteInteractions(const Dataset& ds, std::ostream& out);
void WriteLabels(const Dataset& ds, std::ostream& out);
void WriteDatasetFiles(const Dataset& ds, const std::string& interactions_path,
                       const std::string& labels_path);

struct DatasetStats {
  std::size_t user_count = 0;
  std::size_t item_count = 0;
  std::size_t interaction_count = 0;
  double density = 0.0;  // fraction in [0, 1]
  std::size_t misinfo_item_count = 0;
  std::vector<double> per_user_misinfo_ratio;

  double density_percent() const { return density * 100.0; }
  // Mean of per_user_misinfo_ratio over users with at least one item.
  double MeanUserMisinfoRatio() const;
};

// interactions / (users * items); zero when either dimension is empty.
double Density(std::size_t users, std::size_t items, std::size_t interactions);

DatasetStats ComputeStats(const Dataset& ds);

inline constexpr std::string_view kStatsCsvHeader =
    "users,items,interactions,density_pct,misinfo_items";
// One CSV row matching kStatsCsvHeader, density printed with 3 decimals.
std::string StatsCsvRow(const DatasetStats& stats);

struct ValidationReport {
  std::vector<UserIndex> orphan_users;
  std::vector<ItemIndex> orphan_items;
  double misinfo_item_fraction = 0.0;
};

ValidationReport ValidateDataset(const Dataset& ds);

}  // namespace misrec
