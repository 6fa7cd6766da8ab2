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

#include "misrec/feedback.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <ostream>
#include <string>

#include "misrec/error.hpp"
#include "misrec/format.hpp"
#include "misrec/random.hpp"

namespace misrec {

void SimConfig::Validate() const {
  if (cycles < 0) throw ConfigError("sim.cycles must be >= 0");
  if (accept_count < 1) throw ConfigError("sim.accept must be >= 1");
  if (schedule.size() < static_cast<std::size_t>(cycles)) {
    throw ConfigError("sim.schedule has " + std::to_string(schedule.size()) +
                      " entries but " + std::to_string(cycles) + " cycles were requested");
  }
  if (probes.empty() && schedule.empty()) {
    throw ConfigError("sim needs a schedule or explicit probes");
  }
  if (cutoffs.empty()) throw ConfigError("sim needs at least one cutoff");
  for (std::size_t c : cutoffs) {
    if (c < 1) throw ConfigError("cutoffs must be >= 1");
  }
  for (const auto& rec : schedule) rec.Validate();
  for (const auto& rec : probes) rec.Validate();
  if (workers < 1) throw ConfigError("workers must be >= 1");
}

std::uint64_t CycleSeed(std::uint64_t master_seed, int cycle) {
  return DeriveSeed(master_seed, static_cast<std::uint64_t>(cycle));
}

RecommenderConfig WithSeed(RecommenderConfig cfg, std::uint64_t seed) {
  cfg.seed = seed;
  cfg.mf.seed = seed;
  return cfg;
}

namespace {

Dataset AcceptTop(const Dataset& ds, std::span<const RecommendationList> lists,
                  std::size_t accept, std::vector<RecommendationList>* accepted) {
  std::vector<std::vector<ItemIndex>> additions(ds.num_users());
  if (accepted) accepted->clear();
  for (const auto& list : lists) {
    RecommendationList top{list.user, accept, {}};
    const std::size_t n = std::min(accept, list.entries.size());
    top.entries.assign(list.entries.begin(), list.entries.begin() + static_cast<std::ptrdiff_t>(n));
    for (const auto& e : top.entries) additions[list.user].push_back(e.item);
    if (accepted) accepted->push_back(std::move(top));
  }
  return ds.WithAddedInteractions(additions);
}

}  // namespace

CycleResult RunCycle(const Dataset& ds, const RecommenderConfig& rec, int accept,
                     std::uint64_t seed, int workers) {
  if (accept < 1) throw ContractError("accept count must be >= 1");
  auto shared = std::make_shared<const Dataset>(ds);
  auto model = FitRecommender(shared, WithSeed(rec, seed), workers);
  const auto lists = model->RecommendAll(static_cast<std::size_t>(accept), workers);
  CycleResult result;
  result.dataset = AcceptTop(ds, lists, static_cast<std::size_t>(accept), &result.accepted);
  return result;
}

std::vector<CycleReport> RunSimulation(const Dataset& ds, const SimConfig& cfg) {
  cfg.Validate();
  const std::size_t max_cutoff = *std::max_element(cfg.cutoffs.begin(), cfg.cutoffs.end());
  const std::size_t list_len = std::max(max_cutoff, static_cast<std::size_t>(cfg.accept_count));

  std::vector<CycleReport> reports;
  auto current = std::make_shared<const Dataset>(ds);
  std::optional<RecommenderConfig> grown_by;
  for (int c = 0; c <= cfg.cycles; ++c) {
    const std::uint64_t seed = CycleSeed(cfg.master_seed, c);
    // Lists per seeded config on this cycle's dataset; a probe and the
    // growth step share one fit when their configs agree.
    std::map<std::string, std::vector<RecommendationList>> lists_by_config;
    auto lists_for = [&](const RecommenderConfig& rec) -> const std::vector<RecommendationList>& {
      const auto key = rec.Describe();
      auto it = lists_by_config.find(key);
      if (it == lists_by_config.end()) {
        auto model = FitRecommender(current, rec, cfg.workers);
        it = lists_by_config.emplace(key, model->RecommendAll(list_len, cfg.workers)).first;
      }
      return it->second;
    };

    CycleReport report;
    report.cycle = c;
    report.grown_by = grown_by;
    report.stats = ComputeStats(*current);
    report.profile_misinfo_ratio = report.stats.MeanUserMisinfoRatio();
    std::vector<RecommenderConfig> probes = cfg.probes;
    if (probes.empty()) probes.push_back(cfg.schedule[c == 0 ? 0 : c - 1]);
    for (const auto& probe : probes) {
      const auto seeded = WithSeed(probe, seed);
      report.probes.push_back(
          {seeded, AggregateReports(*current, lists_for(seeded), cfg.cutoffs)});
    }
    reports.push_back(std::move(report));

    if (c == cfg.cycles) break;
    const auto grower = WithSeed(cfg.schedule[c], seed);
    const auto& lists = lists_for(grower);
    current = std::make_shared<const Dataset>(
        AcceptTop(*current, lists, static_cast<std::size_t>(cfg.accept_count), nullptr));
    grown_by = grower;
  }
  return reports;
}

void WriteSimulationCsv(const std::vector<CycleReport>& reports, std::ostream& out) {
  out << "cycle,grown_by,rec,params,cutoff,profile_ratio,interactions,MC,MRD,MG\n";
  for (const auto& report : reports) {
    const std::string grown =
        report.grown_by ? std::string(RecommenderToken(report.grown_by->kind)) : "-";
    for (const auto& probe : report.probes) {
      for (const auto& m : probe.metrics) {
        out << report.cycle << ',' << grown << ',' << RecommenderToken(probe.recommender.kind)
            << ',' << probe.recommender.Params() << ',' << m.cutoff << ','
            << FormatDecimal(report.profile_misinfo_ratio) << ','
            << report.stats.interaction_count << ',' << FormatDecimal(m.mc) << ','
            << FormatDecimal(m.mrd) << ',' << FormatDecimal(m.mg) << '\n';
      }
    }
  }
}

}  // namespace misrec
