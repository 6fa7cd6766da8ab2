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

#include "misrec/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "misrec/error.hpp"
#include "misrec/format.hpp"

namespace misrec {

std::string_view LabelToken(ItemLabel label) {
  return label == ItemLabel::kMisinformative ? "misinfo" : "neutral";
}

std::optional<ItemLabel> ParseLabelToken(std::string_view token) {
  if (token == "misinfo") return ItemLabel::kMisinformative;
  if (token == "neutral") return ItemLabel::kNeutral;
  return std::nullopt;
}

std::vector<ItemIndex> UserProfile::Items() const {
  std::vector<ItemIndex> all;
  all.reserve(size());
  std::merge(misinformative.begin(), misinformative.end(), neutral.begin(), neutral.end(),
             std::back_inserter(all));
  return all;
}

Dataset Dataset::FromRecords(
    std::span<const std::pair<std::string, std::string>> interactions,
    std::span<const std::pair<std::string, ItemLabel>> labels) {
  std::map<std::string, ItemLabel, std::less<>> item_labels;
  for (const auto& [item, label] : labels) {
    auto [it, inserted] = item_labels.emplace(item, label);
    if (!inserted && it->second != label) {
      throw DataError("conflicting labels for item '" + item + "'");
    }
  }
  std::vector<std::string> users;
  users.reserve(interactions.size());
  for (const auto& rec : interactions) {
    users.push_back(rec.first);
    item_labels.emplace(rec.second, ItemLabel::kNeutral);
  }
  std::sort(users.begin(), users.end());
  users.erase(std::unique(users.begin(), users.end()), users.end());

  std::vector<std::string> items;
  std::vector<ItemLabel> item_label_vec;
  items.reserve(item_labels.size());
  item_label_vec.reserve(item_labels.size());
  for (auto& [id, label] : item_labels) {
    items.push_back(id);
    item_label_vec.push_back(label);
  }

  std::vector<std::vector<ItemIndex>> profiles(users.size());
  for (const auto& [user, item] : interactions) {
    const auto u = std::lower_bound(users.begin(), users.end(), user) - users.begin();
    const auto i = std::lower_bound(items.begin(), items.end(), item) - items.begin();
    profiles[u].push_back(static_cast<ItemIndex>(i));
  }
  return FromIndexed(std::move(users), std::move(items), std::move(item_label_vec),
                     std::move(profiles));
}

Dataset Dataset::FromIndexed(std::vector<std::string> user_ids,
                             std::vector<std::string> item_ids,
                             std::vector<ItemLabel> labels,
                             std::vector<std::vector<ItemIndex>> profiles) {
  if (labels.size() != item_ids.size()) {
    throw ContractError("label count does not match item count");
  }
  if (profiles.size() != user_ids.size()) {
    throw ContractError("profile count does not match user count");
  }
  if (std::adjacent_find(user_ids.begin(), user_ids.end(), std::greater_equal<>()) !=
          user_ids.end() ||
      std::adjacent_find(item_ids.begin(), item_ids.end(), std::greater_equal<>()) !=
          item_ids.end()) {
    throw ContractError("ids must be strictly increasing");
  }

  Dataset ds;
  ds.user_ids_ = std::move(user_ids);
  ds.item_ids_ = std::move(item_ids);
  ds.labels_ = std::move(labels);

  const std::size_t n_items = ds.item_ids_.size();
  std::vector<std::size_t> item_degree(n_items, 0);
  ds.user_offsets_.assign(1, 0);
  ds.user_offsets_.reserve(profiles.size() + 1);
  for (auto& profile : profiles) {
    std::sort(profile.begin(), profile.end());
    profile.erase(std::unique(profile.begin(), profile.end()), profile.end());
    if (!profile.empty() && profile.back() >= n_items) {
      throw ContractError("interaction references unknown item");
    }
    for (ItemIndex i : profile) ++item_degree[i];
    ds.user_items_.insert(ds.user_items_.end(), profile.begin(), profile.end());
    ds.user_offsets_.push_back(ds.user_items_.size());
  }

  ds.item_offsets_.assign(n_items + 1, 0);
  for (std::size_t i = 0; i < n_items; ++i) {
    ds.item_offsets_[i + 1] = ds.item_offsets_[i] + item_degree[i];
  }
  ds.item_users_.resize(ds.user_items_.size());
  std::vector<std::size_t> cursor(ds.item_offsets_.begin(), ds.item_offsets_.end() - 1);
  for (UserIndex u = 0; u < ds.user_ids_.size(); ++u) {
    for (ItemIndex i : ds.user_items(u)) ds.item_users_[cursor[i]++] = u;
  }
  return ds;
}

std::optional<UserIndex> Dataset::FindUser(std::string_view id) const {
  auto it = std::lower_bound(user_ids_.begin(), user_ids_.end(), id);
  if (it == user_ids_.end() || *it != id) return std::nullopt;
  return static_cast<UserIndex>(it - user_ids_.begin());
}

std::optional<ItemIndex> Dataset::FindItem(std::string_view id) const {
  auto it = std::lower_bound(item_ids_.begin(), item_ids_.end(), id);
  if (it == item_ids_.end() || *it != id) return std::nullopt;
  return static_cast<ItemIndex>(it - item_ids_.begin());
}

std::span<const ItemIndex> Dataset::user_items(UserIndex u) const {
  if (u >= num_users()) throw ContractError("user index out of range");
  return {user_items_.data() + user_offsets_[u], user_offsets_[u + 1] - user_offsets_[u]};
}

std::span<const UserIndex> Dataset::item_users(ItemIndex i) const {
  if (i >= num_items()) throw ContractError("item index out of range");
  return {item_users_.data() + item_offsets_[i], item_offsets_[i + 1] - item_offsets_[i]};
}

bool Dataset::HasInteraction(UserIndex u, ItemIndex i) const {
  auto items = user_items(u);
  return std::binary_search(items.begin(), items.end(), i);
}

UserProfile Dataset::Profile(UserIndex u) const {
  UserProfile p;
  for (ItemIndex i : user_items(u)) {
    (is_misinformative(i) ? p.misinformative : p.neutral).push_back(i);
  }
  return p;
}

Dataset Dataset::WithAddedInteractions(
    const std::vector<std::vector<ItemIndex>>& additions) const {
  if (additions.size() != num_users()) {
    throw ContractError("additions must have one entry per user");
  }
  std::vector<std::vector<ItemIndex>> profiles(num_users());
  for (UserIndex u = 0; u < num_users(); ++u) {
    auto items = user_items(u);
    profiles[u].assign(items.begin(), items.end());
    profiles[u].insert(profiles[u].end(), additions[u].begin(), additions[u].end());
  }
  return FromIndexed(user_ids_, item_ids_, labels_, std::move(profiles));
}

namespace {

// Splits a line on tabs after stripping a trailing carriage return.
std::vector<std::string_view> SplitTabs(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

Dataset LoadDataset(std::istream& interactions, std::istream& labels,
                    const std::string& interactions_name, const std::string& labels_name) {
  std::vector<std::pair<std::string, std::string>> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(interactions, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    auto fields = SplitTabs(line);
    if (fields.size() != 2) {
      throw ParseError(interactions_name, line_no,
                       "expected 2 tab-separated fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError(interactions_name, line_no, "empty identifier");
    }
    records.emplace_back(std::string(fields[0]), std::string(fields[1]));
  }
  if (records.empty()) {
    throw EmptyDatasetError(interactions_name + ": no interactions");
  }

  std::vector<std::pair<std::string, ItemLabel>> label_records;
  line_no = 0;
  while (std::getline(labels, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    auto fields = SplitTabs(line);
    if (fields.size() != 2) {
      throw ParseError(labels_name, line_no,
                       "expected 2 tab-separated fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw ParseError(labels_name, line_no, "empty identifier");
    auto label = ParseLabelToken(fields[1]);
    if (!label) {
      throw ParseError(labels_name, line_no,
                       "unknown label '" + std::string(fields[1]) + "'");
    }
    label_records.emplace_back(std::string(fields[0]), *label);
  }
  return Dataset::FromRecords(records, label_records);
}

Dataset LoadDatasetFiles(const std::string& interactions_path, const std::string& labels_path) {
  std::ifstream interactions(interactions_path);
  if (!interactions) throw DataError("cannot open " + interactions_path);
  std::ifstream labels(labels_path);
  if (!labels) throw DataError("cannot open " + labels_path);
  return LoadDataset(interactions, labels, interactions_path, labels_path);
}

void WriteInteractions(const Dataset& ds, std::ostream& out) {
  for (UserIndex u = 0; u < ds.num_users(); ++u) {
    for (ItemIndex i : ds.user_items(u)) {
      out << ds.user_id(u) << '\t' << ds.item_id(i) << '\n';
    }
  }
}

void WriteLabels(const Dataset& ds, std::ostream& out) {
  for (ItemIndex i = 0; i < ds.num_items(); ++i) {
    out << ds.item_id(i) << '\t' << LabelToken(ds.label(i)) << '\n';
  }
}

void WriteDatasetFiles(const Dataset& ds, const std::string& interactions_path,
                       const std::string& labels_path) {
  std::ofstream interactions(interactions_path);
  std::ofstream labels(labels_path);
  if (!interactions) throw DataError("cannot write " + interactions_path);
  if (!labels) throw DataError("cannot write " + labels_path);
  WriteInteractions(ds, interactions);
  WriteLabels(ds, labels);
  if (!interactions || !labels) throw DataError("write failed");
}

double DatasetStats::MeanUserMisinfoRatio() const {
  if (per_user_misinfo_ratio.empty()) return 0.0;
  double sum = 0.0;
  for (double r : per_user_misinfo_ratio) sum += r;
  return sum / static_cast<double>(per_user_misinfo_ratio.size());
}

double Density(std::size_t users, std::size_t items, std::size_t interactions) {
  if (users == 0 || items == 0) return 0.0;
  return static_cast<double>(interactions) /
         (static_cast<double>(users) * static_cast<double>(items));
}

DatasetStats ComputeStats(const Dataset& ds) {
  DatasetStats stats;
  stats.user_count = ds.num_users();
  stats.item_count = ds.num_items();
  stats.interaction_count = ds.num_interactions();
  stats.density = Density(stats.user_count, stats.item_count, stats.interaction_count);
  stats.misinfo_item_count = static_cast<std::size_t>(
      std::count(ds.labels().begin(), ds.labels().end(), ItemLabel::kMisinformative));
  stats.per_user_misinfo_ratio.reserve(ds.num_users());
  for (UserIndex u = 0; u < ds.num_users(); ++u) {
    auto items = ds.user_items(u);
    if (items.empty()) continue;
    const auto misinfo = std::count_if(items.begin(), items.end(),
                                       [&](ItemIndex i) { return ds.is_misinformative(i); });
    stats.per_user_misinfo_ratio.push_back(static_cast<double>(misinfo) /
                                           static_cast<double>(items.size()));
  }
  return stats;
}

std::string StatsCsvRow(const DatasetStats& stats) {
  std::ostringstream row;
  row << stats.user_count << ',' << stats.item_count << ',' << stats.interaction_count << ','
      << FormatDecimal(stats.density_percent(), 3) << ',' << stats.misinfo_item_count;
  return row.str();
}

ValidationReport ValidateDataset(const Dataset& ds) {
  ValidationReport report;
  for (UserIndex u = 0; u < ds.num_users(); ++u) {
    if (ds.user_items(u).empty()) report.orphan_users.push_back(u);
  }
  std::size_t misinfo = 0;
  for (ItemIndex i = 0; i < ds.num_items(); ++i) {
    if (ds.item_users(i).empty()) report.orphan_items.push_back(i);
    if (ds.is_misinformative(i)) ++misinfo;
  }
  report.misinfo_item_fraction =
      ds.num_items() == 0 ? 0.0
                          : static_cast<double>(misinfo) / static_cast<double>(ds.num_items());
  return report;
}

}  // namespace misrec
