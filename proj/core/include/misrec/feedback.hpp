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
#include <vector>

#include "misrec/dataset.hpp"
#include "misrec/metrics.hpp"
#include "misrec/recommender.hpp"

namespace misrec {

struct SimConfig {
  int cycles = 2;
  int accept_count = 3;
  // schedule[c] produces the lists accepted to go from cycle c to c + 1.
  std::vector<RecommenderConfig> schedule;
  // Recommenders measured at every cycle. When empty, cycle 0 is measured
  // with schedule[0] and cycle c > 0 with schedule[c - 1].
  std::vector<RecommenderConfig> probes;
  std::vector<std::size_t> cutoffs{5, 10, 20};
  std::uint64_t master_seed = 1;
  int workers = 1;

  // Throws ConfigError; the schedule must cover every cycle.
  void Validate() const;
};

// Seed used for every fit on the dataset of cycle c.
std::uint64_t CycleSeed(std::uint64_t master_seed, int cycle);
// Copy of cfg with its Rnd and MF seeds replaced.
RecommenderConfig WithSeed(RecommenderConfig cfg, std::uint64_t seed);

struct CycleResult {
  Dataset dataset;
  // Per user, the top-`accept` list whose items were added.
  std::vector<RecommendationList> accepted;
};

// Fits rec (seeded with `seed`) on ds and adds every user's top-`accept`
// recommendations as interactions. Users with fewer candidates accept all.
CycleResult RunCycle(const Dataset& ds, const RecommenderConfig& rec, int accept,
                     std::uint64_t seed, int workers = 1);

struct ProbeReport {
  RecommenderConfig recommender;  // as fitted, including the cycle seed
  std::vector<MetricReport> metrics;  // one per cutoff
};

struct CycleReport {
  int cycle = 0;
  // Recommender whose lists were accepted to reach this cycle (none at 0).
  std::optional<RecommenderConfig> grown_by;
  DatasetStats stats;
  // Mean per-user misinformative share of the profiles at this cycle.
  double profile_misinfo_ratio = 0.0;
  std::vector<ProbeReport> probes;
};

// Cycle 0 measures the input dataset; each later cycle first accepts the
// previous cycle's schedule lists, then re-fits and measures the probes.
std::vector<CycleReport> RunSimulation(const Dataset& ds, const SimConfig& cfg);

// Header: cycle,grown_by,rec,params,cutoff,profile_ratio,interactions,MC,MRD,MG
void WriteSimulationCsv(const std::vector<CycleReport>& reports, std::ostream& out);

}  // namespace misrec
