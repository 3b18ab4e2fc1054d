#pragma once

#include <string>
#include <vector>

#include "anpso/ea.hpp"
#include "anpso/pso.hpp"

namespace anpso {

/// Knobs for the adaptive layer that retunes (w, c1, c2) with a (1+1)-EA
/// every `retune_period` swarm iterations.
struct MetaConfig {
  int retune_period = 10;
  int ea_generations = 100;
  EAVariant variant = EAVariant::V1;
  int probe_iters = 10;       // swarm steps simulated per candidate
  double budget_factor = 1.0; // scales ea_generations for cheaper runs
  double sigma0 = 0.1;        // EA step size in parameter space
  double w_lo = 0.4, w_hi = 0.9;
  double c_lo = 0.5, c_hi = 2.5;
};

struct MetaTraceRecord {
  int at_iter = 0;  // retune ran just before this 1-based swarm step
  double w_before = 0, c1_before = 0, c2_before = 0;
  double w_after = 0, c1_after = 0, c2_after = 0;
  double incumbent_f = 0;  // probe fitness of the old parameters
  double best_f = 0;       // probe fitness of the winner
  bool changed = false;
  long long meta_evals = 0;  // objective evaluations spent inside probes
};

struct AdaptiveResult {
  Eigen::VectorXd best_x;
  double best_f = std::numeric_limits<double>::infinity();
  long long evals = 0;       // main-loop evaluations only
  long long nan_evals = 0;
  long long meta_evals = 0;  // probe evaluations, accounted separately
  double w_final = 0, c1_final = 0, c2_final = 0;
  std::vector<PSOIterRecord> trace;
  std::vector<MetaTraceRecord> meta_trace;
};

std::string meta_trace_csv(const std::vector<MetaTraceRecord>& trace);

/// Probe fitness of a parameter triple: copies the swarm (RNG included, so
/// every candidate sees the same continuation randomness), advances it
/// `probe_iters` steps under (w, c1, c2) and reports the resulting best.
/// The live state is never touched.
double meta_objective(const SwarmState& st, const Objective& f, const Bounds& b,
                      double w, double c1, double c2, int probe_iters);

/// One retune: (1+1)-EA over the parameter box, started at the incumbent
/// triple (elitism guarantees the winner probes no worse than it).
/// `retune_index` is 1-based and salts the EA seed.
Eigen::Vector3d retune_params(const SwarmState& st, const Objective& f,
                              const Bounds& b, const Eigen::Vector3d& incumbent,
                              const MetaConfig& meta, std::uint64_t base_seed,
                              int retune_index, MetaTraceRecord* record);

/// PSO with periodic parameter retuning. Before swarm step s (1-based),
/// whenever s is a multiple of retune_period, the EA re-selects (w, c1, c2);
/// the step then runs under the winning triple. A period longer than the
/// run degenerates to plain PSO.
AdaptiveResult optimize_adaptive(const Objective& f, const Bounds& b,
                                 const PSOConfig& cfg, const MetaConfig& meta);

}  // namespace anpso
