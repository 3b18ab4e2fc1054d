#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "anpso/pso.hpp"  // Objective, Bounds

namespace anpso {

/// One config drives all three baselines; each reads only its own knobs.
struct BaselineConfig {
  int population = 20;
  long long max_evals = 2000;
  std::uint64_t seed = 0;
  // GA: tournament size 2, elitism 1
  double crossover_rate = 0.9;
  double mutation_scale_frac = 0.1;  // gene sigma = frac * (hi - lo)
  // DE: rand/1/bin
  double de_f = 0.5;
  double de_cr = 0.9;
  // HS: worst-replacement harmony search
  double hmcr = 0.9;
  double par = 0.3;
  double bw_frac = 0.05;  // pitch bandwidth = frac * (hi - lo)
};

struct GenRecord {
  int gen = 0;  // 1-based generation / improvisation counter
  double best_f = 0.0;
  long long evals = 0;
};

struct BaselineResult {
  Eigen::VectorXd best_x;
  double best_f = 0.0;
  long long evals = 0;
  long long nan_evals = 0;
  std::vector<GenRecord> trace;
};

std::string baseline_trace_csv(const std::vector<GenRecord>& trace);

/// Generational GA: tournament-2 selection, uniform crossover, per-gene
/// Gaussian mutation at rate 1/dims, one elite carried over. May overshoot
/// max_evals by less than one generation.
BaselineResult ga_optimize(const Objective& f, const Bounds& b,
                           const BaselineConfig& cfg);

/// DE/rand/1/bin with in-place replacement; stops exactly at max_evals.
BaselineResult de_optimize(const Objective& f, const Bounds& b,
                           const BaselineConfig& cfg);

/// Harmony search: one improvisation per evaluation, replacing the worst
/// memory entry on strict improvement.
BaselineResult hs_optimize(const Objective& f, const Bounds& b,
                           const BaselineConfig& cfg);

}  // namespace anpso
