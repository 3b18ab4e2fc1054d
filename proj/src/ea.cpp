#include "anpso/ea.hpp"

#include <stdexcept>

#include "anpso/format.hpp"

namespace anpso {

namespace {

double guard(double fv, long long& nan_evals) {
  if (!std::isfinite(fv)) {
    ++nan_evals;
    return std::numeric_limits<double>::infinity();
  }
  return fv;
}

}  // namespace

std::string ea_trace_csv(const std::vector<EAGenRecord>& trace) {
  std::string out = "gen,best_f,sigma,success\n";
  for (const auto& r : trace) {
    out += std::to_string(r.gen);
    out += ',';
    out += format_double(r.best_f);
    out += ',';
    out += format_double(r.sigma);
    out += ',';
    out += r.success ? '1' : '0';
    out += '\n';
  }
  return out;
}

double ea_sigma_update(double sigma, bool success, const EAConfig& cfg) {
  if (success)
    sigma *= cfg.f_up;
  else if (cfg.variant == EAVariant::V1)
    sigma *= cfg.f_down;
  return std::max(sigma, cfg.sigma_min);
}

Eigen::VectorXd mutate(const Eigen::VectorXd& x, double sigma, double pmut,
                       const Bounds& b, Rng& rng) {
  return detail::mutate_with(
      x, sigma, pmut, b, rng, [](Rng& r) { return uniform01(r); },
      [](Rng& r) { return gauss(r); });
}

EAResult ea_optimize(const Objective& f, const Bounds& b, const EAConfig& cfg,
                     const Eigen::VectorXd& x0) {
  b.validate();
  if (cfg.generations < 0)
    throw std::invalid_argument("ea: negative generation count");
  const int d = b.dims();
  const double pmut =
      cfg.mutation_prob < 0.0 ? 1.0 / d : cfg.mutation_prob;

  Rng rng(cfg.seed);
  EAResult res;
  Eigen::VectorXd x(d);
  if (x0.size()) {
    if (x0.size() != d) throw std::invalid_argument("ea: x0 length mismatch");
    for (int i = 0; i < d; ++i)
      x[i] = std::min(std::max(x0[i], b.lo[i]), b.hi[i]);
  } else {
    for (int i = 0; i < d; ++i) x[i] = uniform(rng, b.lo[i], b.hi[i]);
  }
  double fx = guard(f(x), res.nan_evals);
  ++res.evals;
  res.initial_f = fx;

  double sigma = cfg.sigma0;
  res.trace.reserve(cfg.generations);
  for (int gen = 1; gen <= cfg.generations; ++gen) {
    const Eigen::VectorXd y = mutate(x, sigma, pmut, b, rng);
    const double fy = guard(f(y), res.nan_evals);
    ++res.evals;
    const bool success = fy < fx;
    if (success) {
      x = y;
      fx = fy;
      ++res.success_count;
    }
    sigma = ea_sigma_update(sigma, success, cfg);
    res.trace.push_back({gen, fx, sigma, success});
  }
  res.best_x = std::move(x);
  res.best_f = fx;
  res.sigma_final = sigma;
  return res;
}

}  // namespace anpso
