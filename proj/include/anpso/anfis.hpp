#pragma once

#include <Eigen/Dense>
#include <limits>
#include <string>
#include <vector>

#include "anpso/dataset.hpp"
#include "anpso/fis.hpp"

namespace anpso {

enum class TrainMode { Hybrid, Backprop };

struct TrainConfig {
  TrainMode mode = TrainMode::Hybrid;
  int epochs = 60;
  double learning_rate = 0.05;
  double clip_norm = 1.0;  // global L2 clip on the full gradient vector
  // Ridge weight for the hybrid consequent solve. Fuzzy designs with
  // overlapping MFs are routinely near-singular; unregularized LSE then
  // rides near-null directions to enormous coefficients that explode off
  // the training data. 0 recovers the exact solve.
  double ridge_lambda = 1e-3;
  std::uint64_t seed = 0;  // reserved for stochastic variants; batch
                           // training is deterministic and ignores it
};

struct EpochRecord {
  int epoch = 0;            // 1-based
  double train_rmse = 0.0;
  double val_rmse = std::numeric_limits<double>::quiet_NaN();
  int degenerate_rows = 0;  // samples that hit the uniform firing fallback
};

struct TrainTrace {
  std::vector<EpochRecord> epochs;
  std::string to_csv() const;
};

struct TrainResult {
  FISModel model;
  TrainTrace trace;
  bool diverged = false;
  double final_train_rmse = std::numeric_limits<double>::quiet_NaN();
  double final_val_rmse = std::numeric_limits<double>::quiet_NaN();
};

struct LSEResult {
  Eigen::VectorXd theta;      // rule-major, (p_1..p_k, r) per rule
  double residual_rmse = 0.0;
  bool rank_deficient = false;
};

/// Row s, rule-major blocks: [wbar_i * x_1 .. wbar_i * x_k, wbar_i] when the
/// model is first order, [wbar_i] otherwise.
Eigen::MatrixXd lse_design(const FISModel& model, const Dataset& data);

/// Least-squares fit of all consequent parameters, written back into the
/// model. ridge_lambda = 0 (the default) is the exact solve: minimum-norm
/// via a rank-revealing complete orthogonal decomposition, rank deficiency
/// flagged. ridge_lambda > 0 solves (A'A + lambda I) theta = A'y instead,
/// which training uses to keep near-singular designs bounded.
LSEResult lse_consequents(FISModel& model, const Dataset& data,
                          double ridge_lambda = 0.0);

/// Number of scalar premise parameters (all MF params across all inputs).
int premise_param_count(const FISModel& model);

/// Flattened premise parameters, input-major, MF-minor, param-minor.
Eigen::VectorXd get_premise_params(const FISModel& model);

/// Writes a flattened vector back; each MF is repaired afterwards (params
/// sorted, sigma floored at kSigmaMin).
void set_premise_params(FISModel& model, const Eigen::VectorXd& p);

/// Gradient of dataset MSE with respect to the flattened premise vector,
/// consequents held fixed. Rows with an all-zero firing vector contribute
/// nothing (the uniform fallback is flat in the premise parameters).
Eigen::VectorXd premise_gradients(const FISModel& model, const Dataset& data);

/// Gradient of dataset MSE with respect to the rule-major consequent vector.
Eigen::VectorXd consequent_gradients(const FISModel& model, const Dataset& data);

std::vector<double> predict(const FISModel& model, const Dataset& data,
                            int* degenerate_rows = nullptr);

double evaluate_rmse(const FISModel& model, const Dataset& data);

/// Hybrid: per epoch, LSE pass for the consequents then one clipped batch
/// gradient step on the premises. Backprop: clipped batch gradient step on
/// premises and consequents together. Non-finite training error aborts with
/// the diverged flag set and the best-so-far parameters restored.
TrainResult train_anfis(FISModel model, const Dataset& train,
                        const Dataset* validation, const TrainConfig& cfg);

/// Builder for normalized [0,1] inputs: `n_rules` Gaussian MFs per input,
/// evenly spaced centers, rule i wired to MF i of every input.
FISModel default_model(int n_inputs, int n_rules, double sigma = 0.35);

/// Scatter-partition builder: deterministic k-means (farthest-first seeding,
/// no RNG) places one rule per cluster; each rule gets Gaussian MFs centered
/// on its cluster centroid with width = sigma_scale * per-feature std of the
/// cluster members (floored for overlap). The standard way to get coverage
/// of real data without a combinatorial grid.
FISModel default_model_from_data(const Dataset& train, int n_rules,
                                 double sigma_scale = 1.0);

/// Classic grid partition for normalized [0,1] inputs: `mfs_per_input`
/// Gaussian MFs per input with evenly spaced centers (endpoints included) and
/// one rule per cell of the full cartesian product, i.e. mfs_per_input^n_inputs
/// rules. This is the textbook untuned initialization; its rule count grows
/// exponentially and it tends to overfit, which is exactly what structure
/// tuning is meant to fix.
FISModel grid_model(int n_inputs, int mfs_per_input, double sigma = 0.35);

}  // namespace anpso
