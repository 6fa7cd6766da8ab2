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
#include <optional>
#include <span>
#include <vector>

#include "misrec/dataset.hpp"
#include "misrec/recommender.hpp"

namespace misrec {

// Misinformation count: misinformative items among the top-N entries divided
// by N. Lists shorter than N keep the denominator N.
double MisinformationCount(const RecommendationList& list, std::span<const ItemLabel> labels,
                           std::size_t cutoff);

// m_t - m_r: misinformative share of the training profile minus the share in
// the top-min(|list|, N) entries (0 for an empty list). nullopt when the
// training profile is empty, meaning the user is left out of the mean.
std::optional<double> MisinformationRatioDifference(std::span<const ItemIndex> training_profile,
                                                    const RecommendationList& list,
                                                    std::span<const ItemLabel> labels,
                                                    std::size_t cutoff);

// Evenness of recommendation counts over the misinformative catalog.
//
// Counts how often each misinformative item appears in any top-N list, adds
// one pseudo-item holding every neutral recommendation, normalizes to p and
// returns 1 - G, with G = sum_j (2j - n - 1) p_(j) / (n - 1) over p sorted
// ascending. Uniform use scores 1, full concentration 0. nullopt when the
// catalog has no misinformative item or no recommendation was made.
std::optional<double> MisinformationGini(std::span<const RecommendationList> lists,
                                         std::span<const ItemLabel> labels, std::size_t cutoff);

// 1 - G for a vector of non-negative counts (length >= 2, positive total).
double GiniEvenness(std::vector<double> counts);

struct MetricReport {
  std::size_t cutoff = 0;
  double mc = 0.0;
  std::optional<double> mrd;  // nullopt when no user has a training profile
  std::optional<double> mg;
  std::vector<double> per_user_mc;
  std::vector<std::optional<double>> per_user_mrd;
};

// Scores lists[u] against ds's profile of user u for every cutoff. MC and
// MRD are unweighted user means, MG is global. Throws AggregationError when
// there are no users.
std::vector<MetricReport> AggregateReports(const Dataset& ds,
                                           std::span<const RecommendationList> lists,
                                           std::span<const std::size_t> cutoffs);
MetricReport AggregateReport(const Dataset& ds, std::span<const RecommendationList> lists,
                             std::size_t cutoff);

}  // namespace misrec
