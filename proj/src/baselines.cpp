#include "anpso/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "anpso/format.hpp"
#include "anpso/rng.hpp"

namespace anpso {

namespace {

double guard(double fv, long long& nan_evals) {
  if (!std::isfinite(fv)) {
    ++nan_evals;
    return std::numeric_limits<double>::infinity();
  }
  return fv;
}

Eigen::MatrixXd random_population(Rng& rng, const Bounds& b, int pop) {
  Eigen::MatrixXd x(pop, b.dims());
  for (int i = 0; i < pop; ++i)
    for (int j = 0; j < b.dims(); ++j) x(i, j) = uniform(rng, b.lo[j], b.hi[j]);
  return x;
}

void clamp_row(Eigen::VectorXd& v, const Bounds& b) {
  for (int j = 0; j < b.dims(); ++j)
    v[j] = std::min(std::max(v[j], b.lo[j]), b.hi[j]);
}

int argmin(const Eigen::VectorXd& f) {
  int best = 0;
  for (int i = 1; i < f.size(); ++i)
    if (f[i] < f[best]) best = i;
  return best;
}

int argmax(const Eigen::VectorXd& f) {
  int worst = 0;
  for (int i = 1; i < f.size(); ++i)
    if (f[i] > f[worst]) worst = i;
  return worst;
}

void check(const Bounds& b, const BaselineConfig& cfg) {
  b.validate();
  if (cfg.population < 4)
    throw std::invalid_argument("baselines: population must be >= 4");
  if (cfg.max_evals < cfg.population)
    throw std::invalid_argument("baselines: max_evals below initial population");
}

}  // namespace

std::string baseline_trace_csv(const std::vector<GenRecord>& trace) {
  std::string out = "gen,best_f,evals\n";
  for (const auto& r : trace) {
    out += std::to_string(r.gen);
    out += ',';
    out += format_double(r.best_f);
    out += ',';
    out += std::to_string(r.evals);
    out += '\n';
  }
  return out;
}

BaselineResult ga_optimize(const Objective& f, const Bounds& b,
                           const BaselineConfig& cfg) {
  check(b, cfg);
  const int pop = cfg.population;
  const int d = b.dims();
  const double pmut = 1.0 / d;
  const Eigen::VectorXd sig = cfg.mutation_scale_frac * (b.hi - b.lo);

  Rng rng(cfg.seed);
  BaselineResult res;
  Eigen::MatrixXd X = random_population(rng, b, pop);
  Eigen::VectorXd F(pop);
  for (int i = 0; i < pop; ++i) {
    F[i] = guard(f(X.row(i).transpose()), res.nan_evals);
    ++res.evals;
  }
  std::uniform_int_distribution<int> pick(0, pop - 1);

  int gen = 0;
  while (res.evals < cfg.max_evals) {
    const int elite = argmin(F);
    Eigen::MatrixXd newX(pop, d);
    Eigen::VectorXd newF(pop);
    newX.row(0) = X.row(elite);
    newF[0] = F[elite];
    for (int child = 1; child < pop; ++child) {
      const int a1 = pick(rng), b1 = pick(rng);
      const Eigen::VectorXd pa =
          (F[a1] < F[b1] ? X.row(a1) : X.row(b1)).transpose();
      const int a2 = pick(rng), b2 = pick(rng);
      const Eigen::VectorXd pb =
          (F[a2] < F[b2] ? X.row(a2) : X.row(b2)).transpose();
      Eigen::VectorXd c = pa;
      if (uniform01(rng) < cfg.crossover_rate)
        for (int j = 0; j < d; ++j)
          if (uniform01(rng) < 0.5) c[j] = pb[j];
      for (int j = 0; j < d; ++j)
        if (uniform01(rng) < pmut) c[j] += sig[j] * gauss(rng);
      clamp_row(c, b);
      newX.row(child) = c.transpose();
      newF[child] = guard(f(c), res.nan_evals);
      ++res.evals;
    }
    X = std::move(newX);
    F = std::move(newF);
    res.trace.push_back({++gen, F[argmin(F)], res.evals});
  }
  const int best = argmin(F);
  res.best_x = X.row(best).transpose();
  res.best_f = F[best];
  return res;
}

BaselineResult de_optimize(const Objective& f, const Bounds& b,
                           const BaselineConfig& cfg) {
  check(b, cfg);
  const int pop = cfg.population;
  const int d = b.dims();

  Rng rng(cfg.seed);
  BaselineResult res;
  Eigen::MatrixXd X = random_population(rng, b, pop);
  Eigen::VectorXd F(pop);
  for (int i = 0; i < pop; ++i) {
    F[i] = guard(f(X.row(i).transpose()), res.nan_evals);
    ++res.evals;
  }
  std::uniform_int_distribution<int> pick(0, pop - 1);
  std::uniform_int_distribution<int> pick_dim(0, d - 1);

  int gen = 0;
  while (res.evals < cfg.max_evals) {
    for (int i = 0; i < pop && res.evals < cfg.max_evals; ++i) {
      int a, bb, c;
      do a = pick(rng); while (a == i);
      do bb = pick(rng); while (bb == i || bb == a);
      do c = pick(rng); while (c == i || c == a || c == bb);
      const Eigen::VectorXd mut =
          X.row(a).transpose() + cfg.de_f * (X.row(bb) - X.row(c)).transpose();
      const int jr = pick_dim(rng);
      Eigen::VectorXd trial = X.row(i).transpose();
      for (int j = 0; j < d; ++j)
        if (uniform01(rng) < cfg.de_cr || j == jr) trial[j] = mut[j];
      clamp_row(trial, b);
      const double ft = guard(f(trial), res.nan_evals);
      ++res.evals;
      if (ft < F[i]) {
        X.row(i) = trial.transpose();
        F[i] = ft;
      }
    }
    res.trace.push_back({++gen, F[argmin(F)], res.evals});
  }
  const int best = argmin(F);
  res.best_x = X.row(best).transpose();
  res.best_f = F[best];
  return res;
}

BaselineResult hs_optimize(const Objective& f, const Bounds& b,
                           const BaselineConfig& cfg) {
  check(b, cfg);
  const int hms = cfg.population;
  const int d = b.dims();
  const Eigen::VectorXd bw = cfg.bw_frac * (b.hi - b.lo);

  Rng rng(cfg.seed);
  BaselineResult res;
  Eigen::MatrixXd X = random_population(rng, b, hms);
  Eigen::VectorXd F(hms);
  for (int i = 0; i < hms; ++i) {
    F[i] = guard(f(X.row(i).transpose()), res.nan_evals);
    ++res.evals;
  }
  std::uniform_int_distribution<int> pick(0, hms - 1);

  int gen = 0;
  while (res.evals < cfg.max_evals) {
    Eigen::VectorXd h(d);
    for (int j = 0; j < d; ++j) {
      if (uniform01(rng) < cfg.hmcr) {
        h[j] = X(pick(rng), j);
        if (uniform01(rng) < cfg.par) h[j] += bw[j] * uniform(rng, -1.0, 1.0);
      } else {
        h[j] = uniform(rng, b.lo[j], b.hi[j]);
      }
    }
    clamp_row(h, b);
    const double fh = guard(f(h), res.nan_evals);
    ++res.evals;
    const int worst = argmax(F);
    if (fh < F[worst]) {
      X.row(worst) = h.transpose();
      F[worst] = fh;
    }
    res.trace.push_back({++gen, F[argmin(F)], res.evals});
  }
  const int best = argmin(F);
  res.best_x = X.row(best).transpose();
  res.best_f = F[best];
  return res;
}

}  // namespace anpso
