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

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "misrec/config.hpp"
#include "misrec/dataset.hpp"
#include "misrec/error.hpp"
#include "misrec/experiment.hpp"
#include "misrec/feedback.hpp"
#include "misrec/format.hpp"
#include "misrec/profile_gen.hpp"
#include "misrec/synth.hpp"

namespace {

using namespace misrec;

enum ExitCode { kOk = 0, kConfigFailure = 1, kDataFailure = 2, kNumericalFailure = 3 };

ReportFormat ParseFormat(const std::string& text) {
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "text") return ReportFormat::kText;
  throw ConfigError("unknown format '" + text + "' (csv or text)");
}

void Emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    WriteTextFile(path, text);
  }
}

std::string Join(const std::filesystem::path& dir, const char* name) {
  return (dir / name).string();
}

void PrepareDir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create directory " + dir + ": " + ec.message());
}

std::vector<RecommenderConfig> ParseSchedule(const std::string& text, const ExperimentConfig& cfg) {
  std::vector<RecommenderConfig> out;
  for (const auto& token : SplitList(text)) {
    const auto kind = ParseRecommenderKind(token);
    switch (kind) {
      case RecommenderKind::kMF:
        out.push_back(cfg.typical_mf);
        break;
      case RecommenderKind::kUB:
        out.push_back(cfg.typical_ub);
        break;
      case RecommenderKind::kIB:
        out.push_back(cfg.typical_ib);
        break;
      default:
        out.push_back(TypicalConfig(kind, cfg.master_seed));
    }
  }
  return out;
}

// --- subcommands ---------------------------------------------------------

struct StatsArgs {
  std::string interactions, labels, format = "csv";
};

int RunStats(const StatsArgs& a) {
  const auto fmt = ParseFormat(a.format);
  const auto ds = LoadDatasetFiles(a.interactions, a.labels);
  const auto stats = ComputeStats(ds);
  const auto report = ValidateDataset(ds);
  if (fmt == ReportFormat::kCsv) {
    std::cout << kStatsCsvHeader << '\n' << StatsCsvRow(stats) << '\n';
  } else {
    std::cout << "users             " << stats.user_count << '\n'
              << "items             " << stats.item_count << '\n'
              << "interactions      " << stats.interaction_count << '\n'
              << "density %         " << FormatDecimal(stats.density_percent(), 3) << '\n'
              << "misinfo items     " << stats.misinfo_item_count << '\n'
              << "misinfo fraction  " << FormatDecimal(report.misinfo_item_fraction) << '\n'
              << "profile ratio     " << FormatDecimal(stats.MeanUserMisinfoRatio()) << '\n'
              << "orphan users      " << report.orphan_users.size() << '\n'
              << "orphan items      " << report.orphan_items.size() << '\n';
  }
  return kOk;
}

struct SynthArgs {
  std::string config, out_dir;
  SynthConfig cfg;
};

int RunSynth(SynthArgs a, const CLI::App& cmd) {
  if (!a.config.empty()) {
    const auto ini = IniConfig::Load(a.config);
    auto loaded = SynthConfigFromIni(ini);
    // Flags given on the command line win over the file.
    if (cmd.count("--users")) loaded.user_count = a.cfg.user_count;
    if (cmd.count("--items")) loaded.item_count = a.cfg.item_count;
    if (cmd.count("--mean-size")) loaded.mean_profile_size = a.cfg.mean_profile_size;
    if (cmd.count("--misinfo-fraction")) loaded.misinfo_item_fraction = a.cfg.misinfo_item_fraction;
    if (cmd.count("--exponent")) loaded.popularity_exponent = a.cfg.popularity_exponent;
    if (cmd.count("--boost")) loaded.misinfo_popularity_boost = a.cfg.misinfo_popularity_boost;
    if (cmd.count("--seed")) loaded.seed = a.cfg.seed;
    if (cmd.count("--workers")) loaded.workers = a.cfg.workers;
    a.cfg = loaded;
  }
  a.cfg.Validate();
  const auto ds = GenerateSynthetic(a.cfg);
  PrepareDir(a.out_dir);
  const std::filesystem::path dir(a.out_dir);
  WriteDatasetFiles(ds, Join(dir, "interactions.tsv"), Join(dir, "labels.tsv"));
  std::ostringstream header;
  WriteSynthConfig(a.cfg, header);
  WriteTextFile(Join(dir, "synth.ini"), header.str());
  std::cout << kStatsCsvHeader << '\n' << StatsCsvRow(ComputeStats(ds)) << '\n';
  return kOk;
}

struct RatioArgs {
  std::string interactions, labels, ratio, out_dir;
  std::uint64_t seed = 1;
};

int RunRatioBuild(const RatioArgs& a) {
  const auto ratio = RatioSpec::Parse(a.ratio);
  const auto ds = LoadDatasetFiles(a.interactions, a.labels);
  const auto built = BuildRatioDataset(ds, ratio, a.seed);
  PrepareDir(a.out_dir);
  const std::filesystem::path dir(a.out_dir);
  WriteDatasetFiles(built, Join(dir, "interactions.tsv"), Join(dir, "labels.tsv"));
  const std::string csv = std::string(kStatsCsvHeader) + ",ratio,seed\n" +
                          StatsCsvRow(ComputeStats(built)) + "," + ratio.ToString() + "," +
                          std::to_string(a.seed) + "\n";
  WriteTextFile(Join(dir, "stats.csv"), csv);
  std::cout << csv;
  return kOk;
}

struct RunArgs {
  std::string config, format = "csv", output;
  int workers = 0;
};

int RunOne(const RunArgs& a) {
  const auto fmt = ParseFormat(a.format);
  const auto ini = IniConfig::Load(a.config);
  auto cfg = ExperimentConfigFromIni(ini, std::filesystem::path(a.config).parent_path().string());
  if (a.workers > 0) cfg.workers = a.workers;
  const auto spec = RunSpecFromIni(ini, cfg.master_seed);
  const auto base = LoadExperimentDataset(cfg);
  std::vector<ResultRow> rows;
  try {
    const auto ds = BuildRatioDataset(base, spec.ratio, cfg.master_seed);
    rows = RunSingle(ds, spec.ratio, spec.recommender, cfg.cutoffs, cfg.workers);
  } catch (const EmptyDatasetError& e) {
    ResultRow err;
    err.ratio = spec.ratio;
    err.error = e.what();
    rows.push_back(std::move(err));
  }
  Emit(EmitReport(rows, fmt), a.output.empty() ? cfg.output : a.output);
  return rows.front().is_error() ? kDataFailure : kOk;
}

struct SweepArgs {
  std::string config, format = "csv", output, aggregate;
  int workers = 0;
  bool typical_only = false;
};

int RunSweep(const SweepArgs& a) {
  const auto fmt = ParseFormat(a.format);
  auto cfg = LoadExperimentConfig(a.config);
  if (a.workers > 0) cfg.workers = a.workers;
  if (a.typical_only) cfg.typical_only = true;
  std::optional<InfoDimension> dimension;
  if (a.aggregate == "model_size") {
    dimension = InfoDimension::kModelSize;
  } else if (a.aggregate == "extra") {
    dimension = InfoDimension::kExtra;
  } else if (!a.aggregate.empty()) {
    throw ConfigError("--aggregate must be model_size or extra");
  }
  const auto base = LoadExperimentDataset(cfg);
  const auto rows = RunGrid(cfg, base);
  const std::string out = a.output.empty() ? cfg.output : a.output;
  if (!dimension) {
    Emit(EmitReport(rows, fmt), out);
  } else {
    std::vector<std::string> warnings;
    const auto levels = AggregateInfoLevels(rows, *dimension, 10, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    Emit(EmitInfoLevels(levels, fmt), out);
  }
  for (const auto& row : rows) {
    if (row.is_error()) std::cerr << "ratio " << row.ratio.ToString() << ": " << row.error << '\n';
  }
  return kOk;
}

struct SimulateArgs {
  std::string config, schedule, probes, output, ratio = "none";
  int cycles = -1, accept = -1, workers = 0;
};

int RunSimulate(const SimulateArgs& a) {
  auto cfg = LoadExperimentConfig(a.config);
  if (a.workers > 0) cfg.workers = a.workers;
  SimConfig sim = cfg.sim.value_or(SimConfig{});
  if (!cfg.sim) {
    sim.cutoffs = cfg.cutoffs;
    sim.master_seed = cfg.master_seed;
  }
  sim.workers = cfg.workers;
  if (a.cycles >= 0) sim.cycles = a.cycles;
  if (a.accept >= 0) sim.accept_count = a.accept;
  if (!a.schedule.empty()) sim.schedule = ParseSchedule(a.schedule, cfg);
  if (!a.probes.empty()) sim.probes = ParseSchedule(a.probes, cfg);
  sim.Validate();

  const auto ratio = RatioSpec::Parse(a.ratio);
  const auto base = BuildRatioDataset(LoadExperimentDataset(cfg), ratio, cfg.master_seed);
  const auto reports = RunSimulation(base, sim);
  std::ostringstream csv;
  WriteSimulationCsv(reports, csv);
  Emit(csv.str(), a.output.empty() ? cfg.output : a.output);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"misrec: misinformation exposure in collaborative filtering"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "misrec 0.1.0");

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Dataset statistics and validation");
  stats_cmd->add_option("--interactions", stats.interactions, "user<TAB>item file")->required();
  stats_cmd->add_option("--labels", stats.labels, "item<TAB>label file")->required();
  stats_cmd->add_option("--format", stats.format, "csv or text");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic labelled dataset");
  synth_cmd->add_option("--config", synth.config, "INI file with a [synth] section");
  synth_cmd->add_option("--out", synth.out_dir, "Output directory")->required();
  synth_cmd->add_option("--users", synth.cfg.user_count);
  synth_cmd->add_option("--items", synth.cfg.item_count);
  synth_cmd->add_option("--mean-size", synth.cfg.mean_profile_size, "Mean profile size");
  synth_cmd->add_option("--misinfo-fraction", synth.cfg.misinfo_item_fraction);
  synth_cmd->add_option("--exponent", synth.cfg.popularity_exponent, "Popularity exponent");
  synth_cmd->add_option("--boost", synth.cfg.misinfo_popularity_boost,
                        "Popularity multiplier of misinformative items");
  synth_cmd->add_option("--seed", synth.cfg.seed);
  synth_cmd->add_option("--workers", synth.cfg.workers);

  RatioArgs ratio;
  auto* ratio_cmd = app.add_subcommand("ratio-build", "Rebuild profiles at a misinformation ratio");
  ratio_cmd->add_option("--interactions", ratio.interactions)->required();
  ratio_cmd->add_option("--labels", ratio.labels)->required();
  ratio_cmd->add_option("--ratio", ratio.ratio, "p/q, decimal, or none")->required();
  ratio_cmd->add_option("--seed", ratio.seed);
  ratio_cmd->add_option("--out", ratio.out_dir, "Output directory")->required();

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Fit and score one configuration ([run] section)");
  run_cmd->add_option("--config", run.config)->required();
  run_cmd->add_option("--format", run.format, "csv or text");
  run_cmd->add_option("--output", run.output, "Output file, - for stdout");
  run_cmd->add_option("--workers", run.workers);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run the full parameter grid");
  sweep_cmd->add_option("--config", sweep.config)->required();
  sweep_cmd->add_option("--format", sweep.format, "csv or text");
  sweep_cmd->add_option("--output", sweep.output, "Output file, - for stdout");
  sweep_cmd->add_option("--workers", sweep.workers);
  sweep_cmd->add_option("--aggregate", sweep.aggregate, "model_size or extra");
  sweep_cmd->add_flag("--typical-only", sweep.typical_only);

  SimulateArgs simulate;
  auto* sim_cmd = app.add_subcommand("simulate", "Feedback-loop simulation");
  sim_cmd->add_option("--config", simulate.config)->required();
  sim_cmd->add_option("--cycles", simulate.cycles);
  sim_cmd->add_option("--accept", simulate.accept);
  sim_cmd->add_option("--schedule", simulate.schedule, "Recommender per cycle, e.g. MF,MF");
  sim_cmd->add_option("--probes", simulate.probes, "Recommenders measured every cycle");
  sim_cmd->add_option("--ratio", simulate.ratio, "Ratio applied before the first cycle");
  sim_cmd->add_option("--output", simulate.output);
  sim_cmd->add_option("--workers", simulate.workers);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigFailure;
  }

  try {
    if (*stats_cmd) return RunStats(stats);
    if (*synth_cmd) return RunSynth(synth, *synth_cmd);
    if (*ratio_cmd) return RunRatioBuild(ratio);
    if (*run_cmd) return RunOne(run);
    if (*sweep_cmd) return RunSweep(sweep);
    if (*sim_cmd) return RunSimulate(simulate);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const ContractError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kDataFailure;
  }
  return kOk;
}
