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
#include <optional>
#include <string>
#include <vector>

#include "misrec/config.hpp"
#include "misrec/dataset.hpp"
#include "misrec/feedback.hpp"
#include "misrec/profile_gen.hpp"
#include "misrec/recommender.hpp"
#include "misrec/synth.hpp"

namespace misrec {

struct KnnGrid {
  std::vector<int> ks{10, 50, 100};
  std::vector<SimilarityKind> sims{SimilarityKind::kJaccard, SimilarityKind::kCosine,
                                   SimilarityKind::kPearson};
  std::vector<int> qs{1, 2, 3};
};

struct MfGrid {
  std::vector<int> factors{20, 50, 100};
  std::vector<double> lambdas{0.1, 0.01};
  std::vector<int> iterations{20, 100};
  double alpha = 40.0;
  double init_scale = 0.1;
};

struct ExperimentConfig {
  // Either both paths or a synthetic generator.
  std::string interactions_path;
  std::string labels_path;
  std::optional<SynthConfig> synth;

  std::vector<RatioSpec> ratios{RatioSpec(), RatioSpec::Fraction(1, 5),
                                RatioSpec::Fraction(1, 2), RatioSpec::Fraction(4, 5)};
  std::vector<RecommenderKind> kinds{RecommenderKind::kRnd, RecommenderKind::kPop,
                                     RecommenderKind::kMF, RecommenderKind::kIB,
                                     RecommenderKind::kUB};
  MfGrid mf;
  KnnGrid ub;
  KnnGrid ib;
  // Typical configurations of MF, UB and IB.
  RecommenderConfig typical_mf = TypicalConfig(RecommenderKind::kMF);
  RecommenderConfig typical_ub = TypicalConfig(RecommenderKind::kUB);
  RecommenderConfig typical_ib = TypicalConfig(RecommenderKind::kIB);
  bool typical_only = false;
  std::vector<std::size_t> cutoffs{5, 10, 20};
  // Seeds the ratio datasets, Rnd and MF initialization.
  std::uint64_t master_seed = 1;
  int workers = 1;
  std::string output;

  // Present only when the config has a [sim] section.
  std::optional<SimConfig> sim;

  void Validate() const;
};

// Reads every section of an experiment config. Relative dataset paths are
// resolved against `base_dir`.
ExperimentConfig ExperimentConfigFromIni(const IniConfig& ini, const std::string& base_dir = "");
ExperimentConfig LoadExperimentConfig(const std::string& path);

// Single configuration for the `run` subcommand, read from [run]:
// rec, ratio, seed, k, sim, q and mf.factors, mf.lambda, mf.iters, mf.alpha,
// mf.init_scale, mf.seed. Unset parameters take the kind's typical value.
struct RunSpec {
  RatioSpec ratio;
  RecommenderConfig recommender;
};
RunSpec RunSpecFromIni(const IniConfig& ini, std::uint64_t master_seed);

// Loads the configured files or generates the synthetic dataset.
Dataset LoadExperimentDataset(const ExperimentConfig& cfg);

// Recommender configurations for one ratio, in execution order: kinds in
// configured order, each kind's grid as the cross product of its lists (or
// the typical configuration when typical_only).
std::vector<RecommenderConfig> ExpandGrid(const ExperimentConfig& cfg);

struct ResultRow {
  RatioSpec ratio;
  std::optional<RecommenderConfig> recommender;  // empty on an error row
  std::size_t cutoff = 0;
  double mc = 0.0;
  std::optional<double> mrd;
  std::optional<double> mg;
  std::string error;

  bool is_error() const { return !error.empty(); }
};

// Builds each ratio dataset once, fits every grid configuration on it and
// scores all users at every cutoff. A ratio that empties the dataset yields
// one error row and the run continues. Rows come out ordered by (ratio,
// configuration, cutoff) independently of `workers`.
std::vector<ResultRow> RunGrid(const ExperimentConfig& cfg, const Dataset& base);

// Scores an already-built dataset with one recommender.
std::vector<ResultRow> RunSingle(const Dataset& ds, const RatioSpec& ratio,
                                 const RecommenderConfig& rec,
                                 const std::vector<std::size_t>& cutoffs, int workers = 1);

enum class InfoDimension { kModelSize, kExtra };

struct InfoLevelRow {
  RecommenderKind kind;
  std::string level;  // High / Med / Low, or q=1.. for the extra dimension
  RatioSpec ratio;
  double mean_mc = 0.0;
  std::size_t runs = 0;
};

// Averages MC at `cutoff` per (kind, level, ratio). Model size levels:
// 100 factors or neighbors High, 50 Med, 20 factors or 10 neighbors Low.
// Extra levels: MF iterations 100 High and 20 Low, UB/IB by q. Rows whose
// parameter has no level, and levels with no rows, produce warnings.
std::vector<InfoLevelRow> AggregateInfoLevels(const std::vector<ResultRow>& rows,
                                              InfoDimension dimension, std::size_t cutoff = 10,
                                              std::vector<std::string>* warnings = nullptr);

enum class ReportFormat { kCsv, kText };

inline constexpr std::string_view kReportCsvHeader = "ratio,rec,params,cutoff,MC,MRD,MG";

// Throws DataError on an empty table.
std::string EmitReport(const std::vector<ResultRow>& rows, ReportFormat format);
std::string EmitInfoLevels(const std::vector<InfoLevelRow>& rows, ReportFormat format);

// Writes `text` to `path`; throws DataError when the file cannot be written.
void WriteTextFile(const std::string& path, const std::string& text);

}  // namespace misrec
