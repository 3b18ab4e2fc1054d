#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "anpso/pso.hpp"  // Objective, Bounds
#include "anpso/rng.hpp"

namespace anpso {

/// V1 shrinks the step size after a failed offspring; V2 keeps it and only
/// ever grows on success.
enum class EAVariant { V1, V2 };

struct EAConfig {
  EAVariant variant = EAVariant::V1;
  int generations = 100;
  double sigma0 = 1.0;
  double mutation_prob = -1.0;  // negative: defaults to 1/dims
  double f_up = 1.5;
  double f_down = std::pow(1.5, -0.25);  // balances at success rate 1/5
  double sigma_min = 1e-12;
  std::uint64_t seed = 0;
};

struct EAGenRecord {
  int gen = 0;  // 1-based
  double best_f = 0.0;
  double sigma = 0.0;  // after this generation's update
  bool success = false;
};

struct EAResult {
  Eigen::VectorXd best_x;
  double best_f = 0.0;
  double initial_f = 0.0;  // fitness of the starting parent
  double sigma_final = 0.0;
  long long evals = 0;
  long long nan_evals = 0;
  int success_count = 0;
  std::vector<EAGenRecord> trace;
};

std::string ea_trace_csv(const std::vector<EAGenRecord>& trace);

/// The 1/5-rule step-size update, shared by the loop and the tests: success
/// multiplies by f_up in both variants; failure multiplies by f_down in V1
/// and leaves sigma alone in V2. The floor applies in all cases.
double ea_sigma_update(double sigma, bool success, const EAConfig& cfg);

namespace detail {

/// Per-gene mutation with injectable draws so tests can force which genes
/// mutate and by how much. For each gene, one uniform draw decides whether
/// it mutates; mutated genes then consume one normal draw. The child is
/// clamped to the box.
template <class UniformFn, class NormalFn>
Eigen::VectorXd mutate_with(const Eigen::VectorXd& x, double sigma, double pmut,
                            const Bounds& b, Rng& rng, UniformFn&& u01,
                            NormalFn&& gauss1) {
  Eigen::VectorXd y = x;
  for (int i = 0; i < x.size(); ++i)
    if (u01(rng) < pmut) y[i] += sigma * gauss1(rng);
  for (int i = 0; i < y.size(); ++i) {
    if (y[i] < b.lo[i]) y[i] = b.lo[i];
    if (y[i] > b.hi[i]) y[i] = b.hi[i];
  }
  return y;
}

}  // namespace detail

Eigen::VectorXd mutate(const Eigen::VectorXd& x, double sigma, double pmut,
                       const Bounds& b, Rng& rng);

/// Elitist (1+1) loop; strict improvement replaces the parent. Starts from
/// x0 when given (clamped into the box), otherwise uniform in the box.
EAResult ea_optimize(const Objective& f, const Bounds& b, const EAConfig& cfg,
                     const Eigen::VectorXd& x0 = Eigen::VectorXd());

}  // namespace anpso
