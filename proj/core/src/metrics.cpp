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

#include "misrec/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "misrec/error.hpp"

namespace misrec {

namespace {

std::size_t MisinfoInTop(const RecommendationList& list, std::span<const ItemLabel> labels,
                         std::size_t cutoff) {
  const std::size_t n = std::min(list.entries.size(), cutoff);
  std::size_t hits = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const ItemIndex i = list.entries[r].item;
    if (i >= labels.size()) throw ContractError("recommended item has no label");
    if (labels[i] == ItemLabel::kMisinformative) ++hits;
  }
  return hits;
}

}  // namespace

double MisinformationCount(const RecommendationList& list, std::span<const ItemLabel> labels,
                           std::size_t cutoff) {
  if (cutoff < 1) throw ContractError("cutoff must be >= 1");
  return static_cast<double>(MisinfoInTop(list, labels, cutoff)) / static_cast<double>(cutoff);
}

std::optional<double> MisinformationRatioDifference(std::span<const ItemIndex> training_profile,
                                                    const RecommendationList& list,
                                                    std::span<const ItemLabel> labels,
                                                    std::size_t cutoff) {
  if (cutoff < 1) throw ContractError("cutoff must be >= 1");
  if (training_profile.empty()) return std::nullopt;
  std::size_t train_hits = 0;
  for (ItemIndex i : training_profile) {
    if (i >= labels.size()) throw ContractError("profile item has no label");
    if (labels[i] == ItemLabel::kMisinformative) ++train_hits;
  }
  const double m_t =
      static_cast<double>(train_hits) / static_cast<double>(training_profile.size());
  const std::size_t shown = std::min(list.entries.size(), cutoff);
  const double m_r = shown == 0 ? 0.0
                                : static_cast<double>(MisinfoInTop(list, labels, cutoff)) /
                                      static_cast<double>(shown);
  return m_t - m_r;
}

double GiniEvenness(std::vector<double> counts) {
  const std::size_t n = counts.size();
  if (n < 2) throw ContractError("Gini needs at least two components");
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  if (!(total > 0.0)) throw ContractError("Gini needs a positive total");
  std::sort(counts.begin(), counts.end());
  double g = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double coeff = 2.0 * static_cast<double>(j) - static_cast<double>(n) - 1.0;
    g += coeff * (counts[j - 1] / total);
  }
  g /= static_cast<double>(n - 1);
  return 1.0 - g;
}

std::optional<double> MisinformationGini(std::span<const RecommendationList> lists,
                                         std::span<const ItemLabel> labels, std::size_t cutoff) {
  if (cutoff < 1) throw ContractError("cutoff must be >= 1");
  // Slot of each misinformative item in the count vector; the last slot is
  // the neutral pseudo-item.
  std::vector<std::size_t> slot(labels.size(), 0);
  std::size_t misinfo = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == ItemLabel::kMisinformative) slot[i] = misinfo++;
  }
  if (misinfo == 0) return std::nullopt;
  std::vector<std::size_t> counts(misinfo + 1, 0);
  std::size_t total = 0;
  for (const auto& list : lists) {
    const std::size_t n = std::min(list.entries.size(), cutoff);
    for (std::size_t r = 0; r < n; ++r) {
      const ItemIndex i = list.entries[r].item;
      if (i >= labels.size()) throw ContractError("recommended item has no label");
      ++counts[labels[i] == ItemLabel::kMisinformative ? slot[i] : misinfo];
      ++total;
    }
  }
  if (total == 0) return std::nullopt;
  return GiniEvenness(std::vector<double>(counts.begin(), counts.end()));
}

MetricReport AggregateReport(const Dataset& ds, std::span<const RecommendationList> lists,
                             std::size_t cutoff) {
  if (cutoff < 1) throw ContractError("cutoff must be >= 1");
  if (lists.empty()) throw AggregationError("no users to aggregate");
  MetricReport report;
  report.cutoff = cutoff;
  report.per_user_mc.reserve(lists.size());
  report.per_user_mrd.reserve(lists.size());
  double mc_sum = 0.0;
  double mrd_sum = 0.0;
  std::size_t mrd_users = 0;
  for (const auto& list : lists) {
    if (list.user >= ds.num_users()) throw ContractError("list for an unknown user");
    const double mc = MisinformationCount(list, ds.labels(), cutoff);
    const auto mrd =
        MisinformationRatioDifference(ds.user_items(list.user), list, ds.labels(), cutoff);
    report.per_user_mc.push_back(mc);
    report.per_user_mrd.push_back(mrd);
    mc_sum += mc;
    if (mrd) {
      mrd_sum += *mrd;
      ++mrd_users;
    }
  }
  report.mc = mc_sum / static_cast<double>(lists.size());
  if (mrd_users > 0) report.mrd = mrd_sum / static_cast<double>(mrd_users);
  report.mg = MisinformationGini(lists, ds.labels(), cutoff);
  return report;
}

std::vector<MetricReport> AggregateReports(const Dataset& ds,
                                           std::span<const RecommendationList> lists,
                                           std::span<const std::size_t> cutoffs) {
  std::vector<MetricReport> reports;
  reports.reserve(cutoffs.size());
  for (std::size_t cutoff : cutoffs) reports.push_back(AggregateReport(ds, lists, cutoff));
  return reports;
}

}  // namespace misrec
