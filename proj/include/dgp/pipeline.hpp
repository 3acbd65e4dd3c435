#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dgp/config.hpp"
#include "dgp/sim.hpp"

// File-driven pipeline behind the CLI and the C API: dataset generation,
// hyperparameter training, simulation runs, three-mode comparison and
// bound reports.

namespace dgp::pipeline {

namespace fs = std::filesystem;

// Dataset CSV format: header px,py,pz,theta,y1,y2,y3,y4.
void write_dataset_csv(const Dataset& d, const fs::path& path);
Dataset read_dataset_csv(const fs::path& path, const Vec4& sigma_n);

void write_hyperparams_json(const HyperParams& h, double lml,
                            const fs::path& path);
HyperParams read_hyperparams_json(const fs::path& path);

void write_trace_csv(const RunTrace& trace, const fs::path& path,
                     const std::string& mode_label = "");
void write_metrics_json(const RunMetrics& m, const fs::path& path);

// gen-data: n dataset CSVs (drone_1.csv ...) plus manifest.json recording
// seed, regions and noise variance.
void gen_data(const ScenarioConfig& config, const fs::path& out_dir);

// train: per-drone hyperparameter JSONs (hyperparams_drone_1.json ...)
// with the achieved evidence recorded.
void train(const ScenarioConfig& config, const fs::path& data_dir,
           const fs::path& out_dir);

// Loads datasets + hyperparameters and fits the per-drone experts.
// `fit_seconds`, when non-null, receives the wall-clock fit time.
std::vector<GpExpert> load_experts(const ScenarioConfig& config,
                                   const fs::path& data_dir,
                                   const fs::path& hp_dir,
                                   double* fit_seconds = nullptr);

// simulate: trace.csv + metrics.json. Returns the run result; a diagnostic
// termination is reported in the status (partial trace still written).
RunResult simulate(const ScenarioConfig& config, const fs::path& data_dir,
                   const fs::path& hp_dir, const fs::path& out_dir);

struct ComparisonResult {
  double squared_mean_no_gp = 0.0;
  double squared_mean_local = 0.0;
  double squared_mean_distributed = 0.0;
  bool strict_ordering = false;  // distributed < local < no_gp
  RunStatus worst_status = RunStatus::kOk;
};

// compare: all three modes with the identical seed/datasets;
// comparison.json + combined.csv (trace rows tagged by mode).
ComparisonResult compare(const ScenarioConfig& config, const fs::path& data_dir,
                         const fs::path& hp_dir, const fs::path& out_dir);

struct GainConditionReport {
  std::vector<BoundReport> per_expert;
  Vec4 l_mu_network = Vec4::Zero();        // max over experts, per channel
  Vec4 delta_bar_network = Vec4::Zero();   // max over experts, per channel
  double l_mu = 0.0;      // Euclidean aggregate
  double delta_bar = 0.0; // Euclidean aggregate
};

GainConditionReport gain_condition_report(const std::vector<GpExpert>& experts,
                                          double delta,
                                          const RegionGrid& grid);

// bounds: bounds.json with L_mu, Delta_bar, per-channel gamma^2 and beta.
GainConditionReport bounds(const ScenarioConfig& config,
                           const fs::path& data_dir, const fs::path& hp_dir,
                           const fs::path& out_dir);

}  // namespace dgp::pipeline
