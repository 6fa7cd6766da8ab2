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

#include "misrec/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "misrec/error.hpp"
#include "misrec/format.hpp"
#include "misrec/metrics.hpp"
#include "misrec/parallel.hpp"

namespace misrec {

namespace {

std::vector<int> IntList(const IniConfig& ini, const std::string& section, const std::string& key,
                         std::vector<int> fallback) {
  auto items = ini.GetList(section, key);
  if (items.empty()) return fallback;
  std::vector<int> out;
  for (const auto& s : items) out.push_back(static_cast<int>(ParseInt(s, section + "." + key)));
  return out;
}

std::vector<double> DoubleList(const IniConfig& ini, const std::string& section,
                               const std::string& key, std::vector<double> fallback) {
  auto items = ini.GetList(section, key);
  if (items.empty()) return fallback;
  std::vector<double> out;
  for (const auto& s : items) out.push_back(ParseDouble(s, section + "." + key));
  return out;
}

KnnGrid ReadKnnGrid(const IniConfig& ini, const std::string& section, RecommenderConfig& typical) {
  ini.RequireKnownKeys(section, {"k", "sim", "q", "typical_k", "typical_sim", "typical_q"});
  KnnGrid grid;
  grid.ks = IntList(ini, section, "k", grid.ks);
  grid.qs = IntList(ini, section, "q", grid.qs);
  if (auto sims = ini.GetList(section, "sim"); !sims.empty()) {
    grid.sims.clear();
    for (const auto& s : sims) grid.sims.push_back(ParseSimilarityKind(s));
  }
  typical.k = static_cast<int>(ini.GetInt(section, "typical_k", typical.k));
  typical.q = static_cast<int>(ini.GetInt(section, "typical_q", typical.q));
  if (auto s = ini.Get(section, "typical_sim")) typical.sim = ParseSimilarityKind(*s);
  return grid;
}

std::string ResolvePath(const std::string& base_dir, const std::string& path) {
  if (path.empty() || base_dir.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

void ApplySeed(RecommenderConfig& rec, std::uint64_t seed) {
  rec.seed = seed;
  rec.mf.seed = seed;
}

}  // namespace

void ExperimentConfig::Validate() const {
  if (!synth && (interactions_path.empty() || labels_path.empty())) {
    throw ConfigError("dataset needs interactions and labels paths or source = synth");
  }
  if (synth) synth->Validate();
  if (ratios.empty()) throw ConfigError("ratios.values must not be empty");
  if (cutoffs.empty()) throw ConfigError("metrics.cutoffs must not be empty");
  for (std::size_t c : cutoffs) {
    if (c < 1) throw ConfigError("metrics.cutoffs must be >= 1");
  }
  if (workers < 1) throw ConfigError("experiment.workers must be >= 1");
  for (const auto& rec : ExpandGrid(*this)) rec.Validate();
  if (sim) sim->Validate();
}

ExperimentConfig ExperimentConfigFromIni(const IniConfig& ini, const std::string& base_dir) {
  ExperimentConfig cfg;

  ini.RequireKnownSections({"dataset", "synth", "ratios", "experiment", "grid.mf", "grid.ub",
                            "grid.ib", "metrics", "sim", "run"});
  ini.RequireKnownKeys("dataset", {"source", "interactions", "labels"});
  const std::string source = ini.GetString("dataset", "source", "files");
  if (source == "synth") {
    cfg.synth = SynthConfigFromIni(ini);
  } else if (source == "files") {
    cfg.interactions_path = ResolvePath(base_dir, ini.GetString("dataset", "interactions", ""));
    cfg.labels_path = ResolvePath(base_dir, ini.GetString("dataset", "labels", ""));
  } else {
    throw ConfigError("dataset.source must be 'files' or 'synth'");
  }

  ini.RequireKnownKeys("ratios", {"values"});
  if (ini.Has("ratios", "values")) {
    const auto values = ini.GetList("ratios", "values");
    cfg.ratios.clear();
    for (const auto& v : values) cfg.ratios.push_back(RatioSpec::Parse(v));
  }

  ini.RequireKnownKeys("experiment",
                       {"seed", "workers", "typical_only", "recommenders", "output"});
  cfg.master_seed = ini.GetUInt("experiment", "seed", cfg.master_seed);
  cfg.workers = static_cast<int>(ini.GetInt("experiment", "workers", cfg.workers));
  cfg.typical_only = ini.GetBool("experiment", "typical_only", cfg.typical_only);
  cfg.output = ResolvePath(base_dir, ini.GetString("experiment", "output", ""));
  if (ini.Has("experiment", "recommenders")) {
    const auto kinds = ini.GetList("experiment", "recommenders");
    cfg.kinds.clear();
    for (const auto& k : kinds) cfg.kinds.push_back(ParseRecommenderKind(k));
  }

  ini.RequireKnownKeys("grid.mf", {"factors", "lambda", "iters", "alpha", "init_scale",
                                   "typical_factors", "typical_lambda", "typical_iters"});
  cfg.mf.factors = IntList(ini, "grid.mf", "factors", cfg.mf.factors);
  cfg.mf.lambdas = DoubleList(ini, "grid.mf", "lambda", cfg.mf.lambdas);
  cfg.mf.iterations = IntList(ini, "grid.mf", "iters", cfg.mf.iterations);
  cfg.mf.alpha = ini.GetDouble("grid.mf", "alpha", cfg.mf.alpha);
  cfg.mf.init_scale = ini.GetDouble("grid.mf", "init_scale", cfg.mf.init_scale);
  cfg.typical_mf.mf.factors =
      static_cast<int>(ini.GetInt("grid.mf", "typical_factors", cfg.typical_mf.mf.factors));
  cfg.typical_mf.mf.lambda = ini.GetDouble("grid.mf", "typical_lambda", cfg.typical_mf.mf.lambda);
  cfg.typical_mf.mf.iterations =
      static_cast<int>(ini.GetInt("grid.mf", "typical_iters", cfg.typical_mf.mf.iterations));
  cfg.typical_mf.mf.alpha = cfg.mf.alpha;
  cfg.typical_mf.mf.init_scale = cfg.mf.init_scale;

  cfg.ub = ReadKnnGrid(ini, "grid.ub", cfg.typical_ub);
  cfg.ib = ReadKnnGrid(ini, "grid.ib", cfg.typical_ib);

  ini.RequireKnownKeys("metrics", {"cutoffs"});
  if (ini.Has("metrics", "cutoffs")) {
    const auto cutoffs = ini.GetList("metrics", "cutoffs");
    cfg.cutoffs.clear();
    for (const auto& c : cutoffs) {
      cfg.cutoffs.push_back(static_cast<std::size_t>(ParseUInt(c, "metrics.cutoffs")));
    }
  }

  for (auto* rec : {&cfg.typical_mf, &cfg.typical_ub, &cfg.typical_ib}) {
    ApplySeed(*rec, cfg.master_seed);
  }

  if (ini.HasSection("sim")) {
    ini.RequireKnownKeys("sim", {"cycles", "accept", "schedule", "probes"});
    SimConfig sim;
    sim.cycles = static_cast<int>(ini.GetInt("sim", "cycles", sim.cycles));
    sim.accept_count = static_cast<int>(ini.GetInt("sim", "accept", sim.accept_count));
    auto typical_for = [&](const std::string& token) {
      const auto kind = ParseRecommenderKind(token);
      switch (kind) {
        case RecommenderKind::kMF:
          return cfg.typical_mf;
        case RecommenderKind::kUB:
          return cfg.typical_ub;
        case RecommenderKind::kIB:
          return cfg.typical_ib;
        default:
          return TypicalConfig(kind, cfg.master_seed);
      }
    };
    for (const auto& s : ini.GetList("sim", "schedule")) sim.schedule.push_back(typical_for(s));
    for (const auto& s : ini.GetList("sim", "probes")) sim.probes.push_back(typical_for(s));
    sim.cutoffs = cfg.cutoffs;
    sim.master_seed = cfg.master_seed;
    sim.workers = cfg.workers;
    cfg.sim = std::move(sim);
  }

  cfg.Validate();
  return cfg;
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  const auto ini = IniConfig::Load(path);
  const auto dir = std::filesystem::path(path).parent_path().string();
  return ExperimentConfigFromIni(ini, dir);
}

RunSpec RunSpecFromIni(const IniConfig& ini, std::uint64_t master_seed) {
  const std::string section = "run";
  ini.RequireKnownKeys(section, {"rec", "ratio", "seed", "k", "sim", "q", "mf.factors",
                                 "mf.lambda", "mf.iters", "mf.alpha", "mf.init_scale",
                                 "mf.seed"});
  const auto token = ini.Get(section, "rec");
  if (!token) throw ConfigError("run.rec is required");
  RunSpec spec;
  spec.ratio = RatioSpec::Parse(ini.GetString(section, "ratio", "none"));
  auto& rec = spec.recommender;
  rec = TypicalConfig(ParseRecommenderKind(*token), master_seed);
  rec.seed = ini.GetUInt(section, "seed", master_seed);
  rec.k = static_cast<int>(ini.GetInt(section, "k", rec.k));
  rec.q = static_cast<int>(ini.GetInt(section, "q", rec.q));
  if (auto s = ini.Get(section, "sim")) rec.sim = ParseSimilarityKind(*s);
  rec.mf.factors = static_cast<int>(ini.GetInt(section, "mf.factors", rec.mf.factors));
  rec.mf.lambda = ini.GetDouble(section, "mf.lambda", rec.mf.lambda);
  rec.mf.iterations = static_cast<int>(ini.GetInt(section, "mf.iters", rec.mf.iterations));
  rec.mf.alpha = ini.GetDouble(section, "mf.alpha", rec.mf.alpha);
  rec.mf.init_scale = ini.GetDouble(section, "mf.init_scale", rec.mf.init_scale);
  rec.mf.seed = ini.GetUInt(section, "mf.seed", rec.seed);
  rec.Validate();
  return spec;
}

Dataset LoadExperimentDataset(const ExperimentConfig& cfg) {
  if (cfg.synth) return GenerateSynthetic(*cfg.synth);
  return LoadDatasetFiles(cfg.interactions_path, cfg.labels_path);
}

std::vector<RecommenderConfig> ExpandGrid(const ExperimentConfig& cfg) {
  std::vector<RecommenderConfig> out;
  auto knn = [&](RecommenderKind kind, const KnnGrid& grid, const RecommenderConfig& typical) {
    if (cfg.typical_only) {
      out.push_back(typical);
      out.back().kind = kind;
      return;
    }
    for (int k : grid.ks) {
      for (SimilarityKind sim : grid.sims) {
        for (int q : grid.qs) {
          RecommenderConfig rec = typical;
          rec.kind = kind;
          rec.k = k;
          rec.sim = sim;
          rec.q = q;
          out.push_back(rec);
        }
      }
    }
  };
  for (RecommenderKind kind : cfg.kinds) {
    switch (kind) {
      case RecommenderKind::kRnd:
      case RecommenderKind::kPop:
        out.push_back(TypicalConfig(kind, cfg.master_seed));
        break;
      case RecommenderKind::kMF:
        if (cfg.typical_only) {
          out.push_back(cfg.typical_mf);
          break;
        }
        for (int factors : cfg.mf.factors) {
          for (double lambda : cfg.mf.lambdas) {
            for (int iters : cfg.mf.iterations) {
              RecommenderConfig rec = cfg.typical_mf;
              rec.mf.factors = factors;
              rec.mf.lambda = lambda;
              rec.mf.iterations = iters;
              rec.mf.alpha = cfg.mf.alpha;
              rec.mf.init_scale = cfg.mf.init_scale;
              out.push_back(rec);
            }
          }
        }
        break;
      case RecommenderKind::kUB:
        knn(kind, cfg.ub, cfg.typical_ub);
        break;
      case RecommenderKind::kIB:
        knn(kind, cfg.ib, cfg.typical_ib);
        break;
    }
  }
  for (auto& rec : out) ApplySeed(rec, cfg.master_seed);
  return out;
}

std::vector<ResultRow> RunSingle(const Dataset& ds, const RatioSpec& ratio,
                                 const RecommenderConfig& rec,
                                 const std::vector<std::size_t>& cutoffs, int workers) {
  auto shared = std::make_shared<const Dataset>(ds);
  auto model = FitRecommender(shared, rec, workers);
  const std::size_t len = *std::max_element(cutoffs.begin(), cutoffs.end());
  const auto lists = model->RecommendAll(len, workers);
  std::vector<ResultRow> rows;
  for (const auto& report : AggregateReports(ds, lists, cutoffs)) {
    rows.push_back({ratio, rec, report.cutoff, report.mc, report.mrd, report.mg, {}});
  }
  return rows;
}

std::vector<ResultRow> RunGrid(const ExperimentConfig& cfg, const Dataset& base) {
  if (cfg.cutoffs.empty()) throw ConfigError("no cutoffs configured");
  const auto grid = ExpandGrid(cfg);
  std::vector<ResultRow> rows;
  for (const auto& ratio : cfg.ratios) {
    Dataset ds;
    try {
      ds = BuildRatioDataset(base, ratio, cfg.master_seed);
    } catch (const EmptyDatasetError& e) {
      ResultRow err;
      err.ratio = ratio;
      err.error = e.what();
      rows.push_back(std::move(err));
      continue;
    }
    // Each cell is fitted single-threaded; cells run concurrently and write
    // only their own slot, so the result order is fixed.
    std::vector<std::vector<ResultRow>> cells(grid.size());
    ParallelFor(grid.size(), cfg.workers, [&](std::size_t g) {
      cells[g] = RunSingle(ds, ratio, grid[g], cfg.cutoffs, 1);
    });
    for (auto& cell : cells) {
      for (auto& row : cell) rows.push_back(std::move(row));
    }
  }
  return rows;
}

namespace {

std::optional<std::string> ModelSizeLevel(const RecommenderConfig& rec) {
  const int size = rec.kind == RecommenderKind::kMF ? rec.mf.factors : rec.k;
  if (size == 100) return "High";
  if (size == 50) return "Med";
  if (rec.kind == RecommenderKind::kMF ? size == 20 : size == 10) return "Low";
  return std::nullopt;
}

std::optional<std::string> ExtraLevel(const RecommenderConfig& rec) {
  if (rec.kind == RecommenderKind::kMF) {
    if (rec.mf.iterations == 100) return "High";
    if (rec.mf.iterations == 20) return "Low";
    return std::nullopt;
  }
  return "q=" + std::to_string(rec.q);
}

int KindOrder(RecommenderKind kind) {
  switch (kind) {
    case RecommenderKind::kMF:
      return 0;
    case RecommenderKind::kIB:
      return 1;
    case RecommenderKind::kUB:
      return 2;
    default:
      return 3;
  }
}

int LevelOrder(const std::string& level) {
  if (level == "High") return 0;
  if (level == "Med") return 1;
  if (level == "Low") return 2;
  return 3;
}

}  // namespace

std::vector<InfoLevelRow> AggregateInfoLevels(const std::vector<ResultRow>& rows,
                                              InfoDimension dimension, std::size_t cutoff,
                                              std::vector<std::string>* warnings) {
  auto warn = [&](const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  };
  std::vector<RatioSpec> ratio_order;
  struct Acc {
    double sum = 0.0;
    std::size_t n = 0;
  };
  // key: (kind order, level order, level, ratio position)
  std::map<std::tuple<int, int, std::string, std::size_t>, Acc> groups;
  std::map<std::pair<RecommenderKind, std::size_t>, bool> kinds_seen;
  for (const auto& row : rows) {
    if (row.is_error() || row.cutoff != cutoff || !row.recommender) continue;
    const auto& rec = *row.recommender;
    if (rec.kind == RecommenderKind::kRnd || rec.kind == RecommenderKind::kPop) continue;
    auto pos = std::find(ratio_order.begin(), ratio_order.end(), row.ratio);
    if (pos == ratio_order.end()) pos = ratio_order.insert(ratio_order.end(), row.ratio);
    const auto ratio_pos = static_cast<std::size_t>(pos - ratio_order.begin());
    const auto level =
        dimension == InfoDimension::kModelSize ? ModelSizeLevel(rec) : ExtraLevel(rec);
    if (!level) {
      warn("no information level for " + rec.Describe() + "; row skipped");
      continue;
    }
    kinds_seen[{rec.kind, ratio_pos}] = true;
    auto& acc = groups[{KindOrder(rec.kind), LevelOrder(*level), *level, ratio_pos}];
    acc.sum += row.mc;
    ++acc.n;
  }

  const std::vector<std::string> expected =
      dimension == InfoDimension::kModelSize ? std::vector<std::string>{"High", "Med", "Low"}
                                             : std::vector<std::string>{"High", "Low"};
  for (const auto& [key, seen] : kinds_seen) {
    const auto [kind, ratio_pos] = key;
    if (dimension == InfoDimension::kExtra && kind != RecommenderKind::kMF) continue;
    for (const auto& level : expected) {
      if (!groups.count({KindOrder(kind), LevelOrder(level), level, ratio_pos})) {
        warn(std::string(RecommenderToken(kind)) + " " + level + " at ratio " +
             ratio_order[ratio_pos].ToString() + " has no runs; group omitted");
      }
    }
  }

  std::vector<InfoLevelRow> out;
  for (const auto& [key, acc] : groups) {
    const auto& [kind_order, level_order, level, ratio_pos] = key;
    static constexpr RecommenderKind kKinds[] = {RecommenderKind::kMF, RecommenderKind::kIB,
                                                 RecommenderKind::kUB};
    out.push_back({kKinds[kind_order], level, ratio_order[ratio_pos],
                   acc.sum / static_cast<double>(acc.n), acc.n});
  }
  return out;
}

namespace {

std::string CsvSafe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::string RenderTable(const std::vector<std::vector<std::string>>& cells, ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::kCsv) {
    for (const auto& row : cells) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
      out << '\n';
    }
    return out.str();
  }
  std::vector<std::size_t> width;
  for (const auto& row : cells) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += row[c];
      if (c + 1 < row.size()) line.append(width[c] - row[c].size(), ' ');
    }
    out << line << '\n';
  }
  return out.str();
}

}  // namespace

std::string EmitReport(const std::vector<ResultRow>& rows, ReportFormat format) {
  if (rows.empty()) throw DataError("cannot emit an empty report");
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"ratio", "rec", "params", "cutoff", "MC", "MRD", "MG"});
  for (const auto& row : rows) {
    if (row.is_error()) {
      cells.push_back({row.ratio.ToString(), "ERROR", CsvSafe(row.error), "0", "NA", "NA", "NA"});
      continue;
    }
    cells.push_back({row.ratio.ToString(), std::string(RecommenderToken(row.recommender->kind)),
                     row.recommender->Params(), std::to_string(row.cutoff),
                     FormatDecimal(row.mc), FormatDecimal(row.mrd), FormatDecimal(row.mg)});
  }
  return RenderTable(cells, format);
}

std::string EmitInfoLevels(const std::vector<InfoLevelRow>& rows, ReportFormat format) {
  if (rows.empty()) throw DataError("cannot emit an empty report");
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"rec", "info", "ratio", "MC", "runs"});
  for (const auto& row : rows) {
    cells.push_back({std::string(RecommenderToken(row.kind)), row.level, row.ratio.ToString(),
                     FormatDecimal(row.mean_mc), std::to_string(row.runs)});
  }
  return RenderTable(cells, format);
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << text;
  if (!out) throw DataError("write failed for " + path);
}

}  // namespace misrec
