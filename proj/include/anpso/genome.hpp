#pragma once

#include <Eigen/Dense>
#include <string>

#include "anpso/anfis.hpp"
#include "anpso/dataset.hpp"
#include "anpso/fis.hpp"

namespace anpso {

/// Structure-search genome bounds: the decoded model never exceeds these.
constexpr int kMaxRules = 10;
constexpr int kMaxMFs = 5;

/// Flat [0,1] gene vector. Layout for n inputs (133 genes for n = 6):
///   [0]                  rule count        -> 1..kMaxRules
///   [1 .. n]             MF count per input -> 1..kMaxMFs
///   [n+1 .. 2n]          MF kind per input  -> {Triangle, Gaussian, Trapezoid}
///   [2n+1 .. 2n+10n]     shape block: n inputs x kMaxMFs MFs x (center, width)
///   [12n+1 .. 12n+10n]   antecedent block: kMaxRules rules x n genes,
///                        rule-major, each -> MF index modulo the active count
int genome_length(int n_inputs);

/// floor(g*k) clipped to k-1, with g clamped into [0,1] first.
int int_gene(double g, int k);

struct FitnessReport {
  Eigen::VectorXd genome;
  std::string model_summary;
  double train_rmse = 0.0;
  double validation_rmse = 0.0;
  int epochs_used = 0;
  bool diverged = false;
};

/// Deterministic, total decode: every vector in [0,1]^len yields a valid
/// model (out-of-range genes are clamped; shape parameters are repaired).
/// Consequents come out zeroed; training fills them in.
/// Shape mapping per MF with center c and width w:
///   Triangle  (c-w, c, c+w)
///   Gaussian  (c, max(w/2, 1e-3))
///   Trapezoid (c-w, c-w/2, c+w/2, c+w)
FISModel decode(const Eigen::VectorXd& genome, int n_inputs);

/// Decodes, trains on `train`, and scores on `val`; the validation RMSE is
/// the search objective. Divergent training is reported as the 1e6 penalty.
FitnessReport fitness(const Eigen::VectorXd& genome, const Dataset& train,
                      const Dataset& val, const TrainConfig& train_cfg);

constexpr double kFitnessPenalty = 1e6;

}  // namespace anpso
