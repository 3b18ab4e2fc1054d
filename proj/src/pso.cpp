#include "anpso/pso.hpp"

#include <cmath>
#include <stdexcept>

#include "anpso/format.hpp"

namespace anpso {

Bounds Bounds::uniform(int dims, double lo_v, double hi_v) {
  Bounds b;
  b.lo = Eigen::VectorXd::Constant(dims, lo_v);
  b.hi = Eigen::VectorXd::Constant(dims, hi_v);
  b.validate();
  return b;
}

void Bounds::validate() const {
  if (lo.size() == 0 || lo.size() != hi.size())
    throw std::invalid_argument("bounds: empty or mismatched lo/hi");
  for (int j = 0; j < dims(); ++j)
    if (!(lo[j] < hi[j]))
      throw std::invalid_argument("bounds: need lo < hi in every dimension");
}

std::string pso_trace_csv(const std::vector<PSOIterRecord>& trace) {
  std::string out = "iter,gbest_f,evals,w,c1,c2\n";
  for (const auto& r : trace) {
    out += std::to_string(r.iter);
    out += ',';
    out += format_double(r.gbest_f);
    out += ',';
    out += std::to_string(r.evals);
    out += ',';
    out += format_double(r.w);
    out += ',';
    out += format_double(r.c1);
    out += ',';
    out += format_double(r.c2);
    out += '\n';
  }
  return out;
}

SwarmState pso_init(const Objective& f, const Bounds& b, const PSOConfig& cfg) {
  b.validate();
  if (cfg.n_particles < 1)
    throw std::invalid_argument("pso: need at least one particle");
  const int n = cfg.n_particles;
  const int d = b.dims();
  SwarmState st;
  st.rng.seed(cfg.seed);
  st.v_max = cfg.v_max_frac * (b.hi - b.lo);
  st.x.resize(n, d);
  st.v.resize(n, d);
  for (int p = 0; p < n; ++p)
    for (int j = 0; j < d; ++j) st.x(p, j) = uniform(st.rng, b.lo[j], b.hi[j]);
  for (int p = 0; p < n; ++p)
    for (int j = 0; j < d; ++j)
      st.v(p, j) = uniform(st.rng, -st.v_max[j], st.v_max[j]);
  st.pbest_x = st.x;
  st.pbest_f.resize(n);
  for (int p = 0; p < n; ++p) {
    double fv = f(st.x.row(p).transpose());
    ++st.evals;
    if (!std::isfinite(fv)) {
      fv = std::numeric_limits<double>::infinity();
      ++st.nan_evals;
    }
    st.pbest_f[p] = fv;
    if (fv < st.gbest_f) {
      st.gbest_f = fv;
      st.gbest_x = st.x.row(p).transpose();
    }
  }
  if (!st.gbest_x.size()) st.gbest_x = st.x.row(0).transpose();
  return st;
}

void pso_step(SwarmState& st, const Objective& f, const Bounds& b, double w,
              double c1, double c2) {
  detail::pso_step_with(st, f, b, w, c1, c2,
                        [](Rng& rng) { return uniform01(rng); });
}

OptResult pso_optimize(const Objective& f, const Bounds& b, const PSOConfig& cfg) {
  SwarmState st = pso_init(f, b, cfg);
  OptResult res;
  res.trace.reserve(cfg.max_iters);
  for (int it = 1; it <= cfg.max_iters; ++it) {
    pso_step(st, f, b, cfg.w, cfg.c1, cfg.c2);
    res.trace.push_back({it, st.gbest_f, st.evals, cfg.w, cfg.c1, cfg.c2});
  }
  res.best_x = st.gbest_x;
  res.best_f = st.gbest_f;
  res.evals = st.evals;
  res.nan_evals = st.nan_evals;
  return res;
}

}  // namespace anpso
