#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anpso/anfis.hpp"
#include "anpso/anpso.hpp"
#include "anpso/baselines.hpp"
#include "anpso/dataset.hpp"

namespace anpso {

struct AnfisSettings {
  // Premise initialization for the untuned reference model: "grid" is the
  // classic full cartesian grid partition (grid_mfs MFs per input), "kmeans"
  // the scatter partition with `rules` clusters.
  std::string premise = "grid";
  int grid_mfs = 2;
  double grid_sigma = 0.35;
  int rules = 16;
  double sigma = 1.0;  // MF width scale for the data-driven builder
  int epochs = 40;
  double learning_rate = 0.05;
  // Consequent ridge shared by every method's training (baseline fits,
  // search fitness fits, and final retrains), so capacity is the only
  // variable the structure comparison moves.
  double ridge_lambda = 4e-4;
  TrainMode mode = TrainMode::Hybrid;
};

struct TunerSettings {
  int particles = 20;
  int iters = 250;
  double w = 0.7, c1 = 1.5, c2 = 1.5;
  double val_fraction = 0.3;  // carved out of the training split
  int fit_epochs = 5;         // hybrid epochs inside the search objective
  double fit_learning_rate = 0.05;
  int final_epochs = 40;      // retraining budget for the winning genome
  long long max_evals = -1;   // <0: particles * (iters + 1), PSO parity
};

/// Everything one comparison needs; JSON round-trips for `run --config`.
struct ExperimentConfig {
  std::string dataset_path;  // empty -> built-in synthetic generator
  std::uint64_t synthetic_seed = 1;
  int synthetic_n = 345;
  std::vector<std::string> methods = {"anfis", "pso", "anpso"};
  int runs = 10;
  std::uint64_t seed = 42;
  double train_fraction = 0.7;
  AnfisSettings anfis;
  TunerSettings tuner;
  MetaConfig meta;
  std::string out_dir = "out";
};

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);

struct RunOutcome {
  std::string method;
  int run = 0;  // 1-based
  double train_rmse = 0.0;
  double test_rmse = 0.0;
  double train_r = 0.0;
  double test_r = 0.0;
  long long evals = 0;       // search/training evaluations
  long long meta_evals = 0;  // adaptive-layer probe evaluations
  FISModel model;
  std::string trace_csv;
  std::string meta_trace_csv;  // adaptive runs only
};

struct MethodStats {
  std::string method;
  int runs = 0;
  double train_rmse_avg = 0, train_rmse_sd = 0;
  double test_rmse_avg = 0, test_rmse_sd = 0;
  double train_r_avg = 0, test_r_avg = 0;
  double evals_avg = 0, meta_evals_avg = 0;
};

struct ExperimentResult {
  std::vector<RunOutcome> outcomes;
  std::vector<MethodStats> stats;
};

/// Valid method names: anfis, anfis-bp, pso, anpso, ga, de, hs.
bool method_known(const std::string& name);

Dataset load_experiment_dataset(const ExperimentConfig& cfg);

/// Runs every (method, run) cell. Within a run all methods share the same
/// data splits and the same base search seed, so comparisons are paired.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const Dataset& raw);

/// One tuned or plain cell, exposed for the CLI `tune` path.
RunOutcome run_method(const std::string& method, int run,
                      const ExperimentConfig& cfg, const Dataset& train,
                      const Dataset& test, const Dataset& subtrain,
                      const Dataset& val, std::uint64_t search_seed);

std::string stats_csv(const std::vector<MethodStats>& stats);
std::string runs_csv(const std::vector<RunOutcome>& outcomes);
std::string stats_table_text(const std::vector<MethodStats>& stats);

/// Writes stats.csv, stats.txt, runs.csv, manifest.json and per-run
/// runs/<method>/run_<k>/{trace.csv, model.json} under out_dir. Content is a
/// pure function of the config and dataset: no timestamps, no absolute
/// paths, byte-identical across invocations.
void write_experiment(const ExperimentResult& res, const ExperimentConfig& cfg,
                      const std::string& out_dir);

}  // namespace anpso
