#include "anpso/anpso.hpp"

#include <cmath>
#include <stdexcept>

#include "anpso/format.hpp"

namespace anpso {

std::string meta_trace_csv(const std::vector<MetaTraceRecord>& trace) {
  std::string out =
      "at_iter,w_before,c1_before,c2_before,w_after,c1_after,c2_after,"
      "incumbent_f,best_f,changed,meta_evals\n";
  for (const auto& r : trace) {
    out += std::to_string(r.at_iter);
    for (double v : {r.w_before, r.c1_before, r.c2_before, r.w_after,
                     r.c1_after, r.c2_after, r.incumbent_f, r.best_f}) {
      out += ',';
      out += format_double(v);
    }
    out += ',';
    out += r.changed ? '1' : '0';
    out += ',';
    out += std::to_string(r.meta_evals);
    out += '\n';
  }
  return out;
}

double meta_objective(const SwarmState& st, const Objective& f, const Bounds& b,
                      double w, double c1, double c2, int probe_iters) {
  SwarmState probe = st;  // deep copy, RNG included
  for (int i = 0; i < probe_iters; ++i) pso_step(probe, f, b, w, c1, c2);
  return probe.gbest_f;
}

Eigen::Vector3d retune_params(const SwarmState& st, const Objective& f,
                              const Bounds& b, const Eigen::Vector3d& incumbent,
                              const MetaConfig& meta, std::uint64_t base_seed,
                              int retune_index, MetaTraceRecord* record) {
  Bounds pbox;
  pbox.lo = Eigen::Vector3d(meta.w_lo, meta.c_lo, meta.c_lo);
  pbox.hi = Eigen::Vector3d(meta.w_hi, meta.c_hi, meta.c_hi);

  const Objective probe_f = [&](const Eigen::VectorXd& p) {
    return meta_objective(st, f, b, p[0], p[1], p[2], meta.probe_iters);
  };

  EAConfig ea;
  ea.variant = meta.variant;
  ea.generations = std::max(
      1, static_cast<int>(std::lround(meta.ea_generations * meta.budget_factor)));
  ea.sigma0 = meta.sigma0;
  ea.seed = mix_seed(base_seed, 9000 + static_cast<std::uint64_t>(retune_index));
  // mutation_prob stays at the 1/dims default -> 1/3 here

  const EAResult res = ea_optimize(probe_f, pbox, ea, incumbent);

  if (record) {
    record->w_before = incumbent[0];
    record->c1_before = incumbent[1];
    record->c2_before = incumbent[2];
    record->w_after = res.best_x[0];
    record->c1_after = res.best_x[1];
    record->c2_after = res.best_x[2];
    record->incumbent_f = res.initial_f;
    record->best_f = res.best_f;
    record->changed = (res.best_x - incumbent).cwiseAbs().maxCoeff() > 0.0;
    // probes per EA evaluation: probe_iters steps, each evaluating the swarm
    const long long per_eval =
        static_cast<long long>(meta.probe_iters) * st.x.rows();
    record->meta_evals = res.evals * per_eval;
  }
  return res.best_x.head<3>();
}

AdaptiveResult optimize_adaptive(const Objective& f, const Bounds& b,
                                 const PSOConfig& cfg, const MetaConfig& meta) {
  if (meta.retune_period < 1)
    throw std::invalid_argument("anpso: retune_period must be >= 1");
  SwarmState st = pso_init(f, b, cfg);
  AdaptiveResult res;
  Eigen::Vector3d params(cfg.w, cfg.c1, cfg.c2);
  int retunes = 0;
  for (int s = 1; s <= cfg.max_iters; ++s) {
    if (s % meta.retune_period == 0) {
      MetaTraceRecord rec;
      rec.at_iter = s;
      params = retune_params(st, f, b, params, meta, cfg.seed, ++retunes, &rec);
      res.meta_evals += rec.meta_evals;
      res.meta_trace.push_back(rec);
    }
    pso_step(st, f, b, params[0], params[1], params[2]);
    res.trace.push_back({s, st.gbest_f, st.evals, params[0], params[1], params[2]});
  }
  res.best_x = st.gbest_x;
  res.best_f = st.gbest_f;
  res.evals = st.evals;
  res.nan_evals = st.nan_evals;
  res.w_final = params[0];
  res.c1_final = params[1];
  res.c2_final = params[2];
  return res;
}

}  // namespace anpso
