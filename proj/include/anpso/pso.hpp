#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "anpso/rng.hpp"

namespace anpso {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct Bounds {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  int dims() const { return static_cast<int>(lo.size()); }
  static Bounds uniform(int dims, double lo_v, double hi_v);
  void validate() const;  // throws unless lo < hi componentwise
};

struct PSOConfig {
  int n_particles = 30;
  int max_iters = 200;
  double w = 0.7;
  double c1 = 1.5;
  double c2 = 1.5;
  double v_max_frac = 0.2;  // velocity clamp as a fraction of each range
  std::uint64_t seed = 0;
};

/// Full swarm snapshot. Copying it (RNG included) lets a caller replay the
/// exact continuation of the main loop, which the adaptive meta-layer uses
/// for its probes.
struct SwarmState {
  Eigen::MatrixXd x;        // particles in rows
  Eigen::MatrixXd v;
  Eigen::MatrixXd pbest_x;
  Eigen::VectorXd pbest_f;
  Eigen::VectorXd gbest_x;
  double gbest_f = std::numeric_limits<double>::infinity();
  Eigen::VectorXd v_max;    // per-dimension clamp
  Rng rng;
  int iter = 0;
  long long evals = 0;
  long long nan_evals = 0;  // non-finite objective values mapped to +inf
};

struct PSOIterRecord {
  int iter = 0;  // 1-based
  double gbest_f = 0.0;
  long long evals = 0;
  double w = 0.0, c1 = 0.0, c2 = 0.0;  // parameters used for this step
};

struct OptResult {
  Eigen::VectorXd best_x;
  double best_f = std::numeric_limits<double>::infinity();
  long long evals = 0;
  long long nan_evals = 0;
  std::vector<PSOIterRecord> trace;
};

std::string pso_trace_csv(const std::vector<PSOIterRecord>& trace);

/// Samples positions uniform in the box and velocities uniform in
/// [-v_max, v_max], then evaluates everyone to seed the bests.
SwarmState pso_init(const Objective& f, const Bounds& b, const PSOConfig& cfg);

namespace detail {

/// One synchronous step with an injectable uniform-[0,1) source so tests can
/// pin the update rule with forced r1/r2 draws. Per particle and dimension,
/// r1 is drawn before r2. Out-of-box components are clamped to the boundary
/// with their velocity zeroed. Best updates are strict improvements.
template <class UniformFn>
void pso_step_with(SwarmState& st, const Objective& f, const Bounds& b,
                   double w, double c1, double c2, UniformFn&& u01) {
  const int n = static_cast<int>(st.x.rows());
  const int d = static_cast<int>(st.x.cols());
  for (int p = 0; p < n; ++p) {
    for (int j = 0; j < d; ++j) {
      const double r1 = u01(st.rng);
      const double r2 = u01(st.rng);
      double vel = w * st.v(p, j) + c1 * r1 * (st.pbest_x(p, j) - st.x(p, j)) +
                   c2 * r2 * (st.gbest_x[j] - st.x(p, j));
      if (vel > st.v_max[j]) vel = st.v_max[j];
      if (vel < -st.v_max[j]) vel = -st.v_max[j];
      double pos = st.x(p, j) + vel;
      if (pos < b.lo[j]) {
        pos = b.lo[j];
        vel = 0.0;
      } else if (pos > b.hi[j]) {
        pos = b.hi[j];
        vel = 0.0;
      }
      st.v(p, j) = vel;
      st.x(p, j) = pos;
    }
    double fv = f(st.x.row(p).transpose());
    ++st.evals;
    if (!std::isfinite(fv)) {
      fv = std::numeric_limits<double>::infinity();
      ++st.nan_evals;
    }
    if (fv < st.pbest_f[p]) {
      st.pbest_f[p] = fv;
      st.pbest_x.row(p) = st.x.row(p);
    }
    if (fv < st.gbest_f) {
      st.gbest_f = fv;
      st.gbest_x = st.x.row(p).transpose();
    }
  }
  ++st.iter;
}

}  // namespace detail

/// One step with the swarm's own RNG and explicit parameters (the adaptive
/// layer varies them between steps).
void pso_step(SwarmState& st, const Objective& f, const Bounds& b, double w,
              double c1, double c2);

/// Plain fixed-parameter PSO loop.
OptResult pso_optimize(const Objective& f, const Bounds& b, const PSOConfig& cfg);

}  // namespace anpso
