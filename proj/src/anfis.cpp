#include "anpso/anfis.hpp"

#include <cmath>
#include <stdexcept>

#include "anpso/format.hpp"
#include "anpso/metrics.hpp"

namespace anpso {

namespace {

/// Start index of each MF's parameter block in the flattened premise vector.
std::vector<std::vector<int>> premise_offsets(const FISModel& model, int* total) {
  std::vector<std::vector<int>> offset(model.n_inputs());
  int at = 0;
  for (int j = 0; j < model.n_inputs(); ++j) {
    offset[j].resize(model.inputs[j].size());
    for (std::size_t m = 0; m < model.inputs[j].size(); ++m) {
      offset[j][m] = at;
      at += static_cast<int>(model.inputs[j][m].params.size());
    }
  }
  if (total) *total = at;
  return offset;
}

}  // namespace

int premise_param_count(const FISModel& model) {
  int total = 0;
  premise_offsets(model, &total);
  return total;
}

Eigen::VectorXd get_premise_params(const FISModel& model) {
  Eigen::VectorXd p(premise_param_count(model));
  int at = 0;
  for (const auto& in : model.inputs)
    for (const auto& mf : in)
      for (double v : mf.params) p[at++] = v;
  return p;
}

void set_premise_params(FISModel& model, const Eigen::VectorXd& p) {
  if (p.size() != premise_param_count(model))
    throw std::invalid_argument("set_premise_params: length mismatch");
  int at = 0;
  for (auto& in : model.inputs)
    for (auto& mf : in) {
      for (double& v : mf.params) v = p[at++];
      mf.repair();
    }
}

Eigen::MatrixXd lse_design(const FISModel& model, const Dataset& data) {
  const int n = data.n_samples();
  const int R = model.n_rules();
  const int csize = model.consequent_size();
  Eigen::MatrixXd A(n, R * csize);
  for (int s = 0; s < n; ++s) {
    const std::vector<double> x = data.row(s);
    const FiringStrengths fs = fire_rules(model, x);
    for (int i = 0; i < R; ++i) {
      const double wbar = fs.normalized[i];
      const int base = i * csize;
      if (model.first_order) {
        for (int j = 0; j < model.n_inputs(); ++j) A(s, base + j) = wbar * x[j];
        A(s, base + model.n_inputs()) = wbar;
      } else {
        A(s, base) = wbar;
      }
    }
  }
  return A;
}

LSEResult lse_consequents(FISModel& model, const Dataset& data,
                          double ridge_lambda) {
  const Eigen::MatrixXd A = lse_design(model, data);
  const Eigen::VectorXd& y = data.targets;
  LSEResult res;
  if (ridge_lambda > 0.0) {
    const Eigen::MatrixXd G =
        A.transpose() * A +
        ridge_lambda * Eigen::MatrixXd::Identity(A.cols(), A.cols());
    res.theta = G.ldlt().solve(A.transpose() * y);
    res.rank_deficient = false;  // the regularized system is always unique
  } else {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    res.theta = cod.solve(y);
    res.rank_deficient = cod.rank() < A.cols();
  }
  res.residual_rmse =
      std::sqrt((A * res.theta - y).squaredNorm() / data.n_samples());
  const int csize = model.consequent_size();
  for (int i = 0; i < model.n_rules(); ++i)
    for (int c = 0; c < csize; ++c)
      model.rules[i].consequent[c] = res.theta[i * csize + c];
  return res;
}

Eigen::VectorXd premise_gradients(const FISModel& model, const Dataset& data) {
  const int n = data.n_samples();
  const int k = model.n_inputs();
  const int R = model.n_rules();
  int total = 0;
  const auto offset = premise_offsets(model, &total);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(total);
  Eigen::MatrixXd mus(R, k);
  std::vector<double> w(R), f(R);
  for (int s = 0; s < n; ++s) {
    const std::vector<double> x = data.row(s);
    double S = 0.0;
    for (int i = 0; i < R; ++i) {
      double wi = 1.0;
      for (int j = 0; j < k; ++j) {
        const double m = model.inputs[j][model.rules[i].antecedent[j]].eval(x[j]);
        mus(i, j) = m;
        wi *= m;
      }
      w[i] = wi;
      S += wi;
      const auto& c = model.rules[i].consequent;
      double fi = c.back();
      if (model.first_order)
        for (int j = 0; j < k; ++j) fi += c[j] * x[j];
      f[i] = fi;
    }
    if (!(S > 0.0)) continue;  // uniform fallback is flat in the premises
    double yhat = 0.0;
    for (int i = 0; i < R; ++i) yhat += (w[i] / S) * f[i];
    const double coef = 2.0 * (yhat - data.targets(s)) / n;
    for (int i = 0; i < R; ++i) {
      const double dydw = (f[i] - yhat) / S;
      for (int j = 0; j < k; ++j) {
        double excl = 1.0;
        for (int l = 0; l < k; ++l)
          if (l != j) excl *= mus(i, l);
        if (excl == 0.0) continue;
        const int m = model.rules[i].antecedent[j];
        const auto& mf = model.inputs[j][m];
        const int base = offset[j][m];
        for (int p = 0; p < static_cast<int>(mf.params.size()); ++p) {
          const double dmu = mf.grad(x[j], p);
          if (dmu != 0.0) g[base + p] += coef * dydw * excl * dmu;
        }
      }
    }
  }
  return g;
}

Eigen::VectorXd consequent_gradients(const FISModel& model, const Dataset& data) {
  const int n = data.n_samples();
  const int k = model.n_inputs();
  const int R = model.n_rules();
  const int csize = model.consequent_size();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(R * csize);
  for (int s = 0; s < n; ++s) {
    const std::vector<double> x = data.row(s);
    const FiringStrengths fs = fire_rules(model, x);
    double yhat = 0.0;
    for (int i = 0; i < R; ++i) {
      const auto& c = model.rules[i].consequent;
      double fi = c.back();
      if (model.first_order)
        for (int j = 0; j < k; ++j) fi += c[j] * x[j];
      yhat += fs.normalized[i] * fi;
    }
    const double coef = 2.0 * (yhat - data.targets(s)) / n;
    for (int i = 0; i < R; ++i) {
      const double wbar = fs.normalized[i];
      const int base = i * csize;
      if (model.first_order) {
        for (int j = 0; j < k; ++j) g[base + j] += coef * wbar * x[j];
        g[base + k] += coef * wbar;
      } else {
        g[base] += coef * wbar;
      }
    }
  }
  return g;
}

std::vector<double> predict(const FISModel& model, const Dataset& data,
                            int* degenerate_rows) {
  std::vector<double> out(data.n_samples());
  int bad = 0;
  for (int s = 0; s < data.n_samples(); ++s) {
    bool deg = false;
    out[s] = infer(model, data.row(s), &deg);
    bad += deg ? 1 : 0;
  }
  if (degenerate_rows) *degenerate_rows = bad;
  return out;
}

double evaluate_rmse(const FISModel& model, const Dataset& data) {
  return rmse(predict(model, data), data.targets_vec());
}

std::string TrainTrace::to_csv() const {
  std::string out = "epoch,train_rmse,val_rmse,degenerate_rows\n";
  for (const auto& e : epochs) {
    out += std::to_string(e.epoch);
    out += ',';
    out += format_double(e.train_rmse);
    out += ',';
    out += format_double(e.val_rmse);
    out += ',';
    out += std::to_string(e.degenerate_rows);
    out += '\n';
  }
  return out;
}

TrainResult train_anfis(FISModel model, const Dataset& train,
                        const Dataset* validation, const TrainConfig& cfg) {
  model.validate();
  if (train.n_samples() == 0)
    throw std::invalid_argument("train_anfis: empty training set");

  TrainResult res;
  const int csize = model.consequent_size();
  FISModel best = model;
  double best_metric = std::numeric_limits<double>::infinity();

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    if (cfg.mode == TrainMode::Hybrid)
      lse_consequents(model, train, cfg.ridge_lambda);

    Eigen::VectorXd gp = premise_gradients(model, train);
    Eigen::VectorXd gc;
    double norm2 = gp.squaredNorm();
    if (cfg.mode == TrainMode::Backprop) {
      gc = consequent_gradients(model, train);
      norm2 += gc.squaredNorm();
    }
    const double norm = std::sqrt(norm2);
    double scale = cfg.learning_rate;
    if (cfg.clip_norm > 0.0 && norm > cfg.clip_norm)
      scale *= cfg.clip_norm / norm;

    set_premise_params(model, get_premise_params(model) - scale * gp);
    if (cfg.mode == TrainMode::Backprop) {
      for (int i = 0; i < model.n_rules(); ++i)
        for (int c = 0; c < csize; ++c)
          model.rules[i].consequent[c] -= scale * gc[i * csize + c];
    }

    EpochRecord rec;
    rec.epoch = epoch;
    int deg = 0;
    rec.train_rmse = rmse(predict(model, train, &deg), train.targets_vec());
    rec.degenerate_rows = deg;
    if (validation) rec.val_rmse = evaluate_rmse(model, *validation);
    res.trace.epochs.push_back(rec);

    if (!std::isfinite(rec.train_rmse)) {
      res.diverged = true;
      model = best;
      break;
    }
    const double metric = validation ? rec.val_rmse : rec.train_rmse;
    if (metric < best_metric) {
      best_metric = metric;
      best = model;
    }
  }

  // Re-sync the consequents with the final premises; the epoch loop leaves
  // them one premise step stale in hybrid mode.
  if (cfg.mode == TrainMode::Hybrid && !res.diverged)
    lse_consequents(model, train, cfg.ridge_lambda);

  res.final_train_rmse = evaluate_rmse(model, train);
  if (validation) res.final_val_rmse = evaluate_rmse(model, *validation);
  if (!std::isfinite(res.final_train_rmse)) {
    res.diverged = true;
    model = best;
    res.final_train_rmse = evaluate_rmse(model, train);
    if (validation) res.final_val_rmse = evaluate_rmse(model, *validation);
  }
  res.model = std::move(model);
  return res;
}

FISModel default_model_from_data(const Dataset& train, int n_rules,
                                 double sigma_scale) {
  const int n = train.n_samples();
  const int d = train.n_features();
  if (n_rules < 1) throw std::invalid_argument("default_model_from_data: rules");
  if (n_rules > n) n_rules = n;
  const Eigen::MatrixXd& X = train.features;

  // Farthest-first seeding from the point nearest the mean: deterministic.
  std::vector<int> seed_idx;
  {
    const Eigen::RowVectorXd mean = X.colwise().mean();
    int first = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double dist = (X.row(i) - mean).squaredNorm();
      if (dist < best) {
        best = dist;
        first = i;
      }
    }
    seed_idx.push_back(first);
    Eigen::VectorXd min_dist(n);
    for (int i = 0; i < n; ++i)
      min_dist[i] = (X.row(i) - X.row(first)).squaredNorm();
    while (static_cast<int>(seed_idx.size()) < n_rules) {
      int far = 0;
      for (int i = 1; i < n; ++i)
        if (min_dist[i] > min_dist[far]) far = i;
      seed_idx.push_back(far);
      for (int i = 0; i < n; ++i)
        min_dist[i] = std::min(min_dist[i], (X.row(i) - X.row(far)).squaredNorm());
    }
  }
  Eigen::MatrixXd centers(n_rules, d);
  for (int k = 0; k < n_rules; ++k) centers.row(k) = X.row(seed_idx[k]);

  // Lloyd iterations; ties and empty clusters resolved deterministically.
  std::vector<int> assign(n, 0);
  for (int pass = 0; pass < 25; ++pass) {
    bool moved = false;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double bd = (X.row(i) - centers.row(0)).squaredNorm();
      for (int k = 1; k < n_rules; ++k) {
        const double dist = (X.row(i) - centers.row(k)).squaredNorm();
        if (dist < bd) {
          bd = dist;
          best = k;
        }
      }
      if (assign[i] != best) {
        assign[i] = best;
        moved = true;
      }
    }
    if (!moved && pass > 0) break;
    for (int k = 0; k < n_rules; ++k) {
      Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(d);
      int count = 0;
      for (int i = 0; i < n; ++i)
        if (assign[i] == k) {
          sum += X.row(i);
          ++count;
        }
      if (count > 0) {
        centers.row(k) = sum / count;
      } else {
        // Re-seed an empty cluster at the point farthest from its center.
        int far = 0;
        double fd = -1.0;
        for (int i = 0; i < n; ++i) {
          const double dist = (X.row(i) - centers.row(k)).squaredNorm();
          if (dist > fd) {
            fd = dist;
            far = i;
          }
        }
        centers.row(k) = X.row(far);
      }
    }
  }

  // Per-cluster, per-feature spread; floored so neighbours always overlap.
  constexpr double kWidthFloor = 0.12;
  FISModel m;
  m.first_order = true;
  m.inputs.assign(d, {});
  for (int k = 0; k < n_rules; ++k) {
    Eigen::RowVectorXd sq = Eigen::RowVectorXd::Zero(d);
    int count = 0;
    for (int i = 0; i < n; ++i)
      if (assign[i] == k) {
        sq += (X.row(i) - centers.row(k)).cwiseAbs2();
        ++count;
      }
    for (int j = 0; j < d; ++j) {
      const double var = count > 1 ? sq[j] / (count - 1) : 0.0;
      const double sigma =
          std::max(sigma_scale * std::sqrt(var), sigma_scale * kWidthFloor);
      m.inputs[j].push_back(MembershipFunction::gaussian(centers(k, j), sigma));
    }
  }
  for (int k = 0; k < n_rules; ++k) {
    Rule r;
    r.antecedent.assign(d, k);
    r.consequent.assign(d + 1, 0.0);
    m.rules.push_back(std::move(r));
  }
  return m;
}

FISModel default_model(int n_inputs, int n_rules, double sigma) {
  if (n_inputs < 1 || n_rules < 1)
    throw std::invalid_argument("default_model: need >=1 input and rule");
  FISModel m;
  m.first_order = true;
  for (int j = 0; j < n_inputs; ++j) {
    std::vector<MembershipFunction> mfs;
    for (int i = 0; i < n_rules; ++i) {
      const double c =
          n_rules == 1 ? 0.5 : static_cast<double>(i) / (n_rules - 1);
      mfs.push_back(MembershipFunction::gaussian(c, sigma));
    }
    m.inputs.push_back(std::move(mfs));
  }
  for (int i = 0; i < n_rules; ++i) {
    Rule r;
    r.antecedent.assign(n_inputs, i);
    r.consequent.assign(n_inputs + 1, 0.0);
    m.rules.push_back(std::move(r));
  }
  return m;
}

FISModel grid_model(int n_inputs, int mfs_per_input, double sigma) {
  if (n_inputs < 1 || mfs_per_input < 1)
    throw std::invalid_argument("grid_model: need >=1 input and MF");
  double cells = 1.0;
  for (int j = 0; j < n_inputs; ++j) cells *= mfs_per_input;
  if (cells > 4096.0)
    throw std::invalid_argument("grid_model: too many rules (cap 4096)");

  FISModel m;
  m.first_order = true;
  for (int j = 0; j < n_inputs; ++j) {
    std::vector<MembershipFunction> mfs;
    for (int i = 0; i < mfs_per_input; ++i) {
      const double c = mfs_per_input == 1
                           ? 0.5
                           : static_cast<double>(i) / (mfs_per_input - 1);
      mfs.push_back(MembershipFunction::gaussian(c, sigma));
    }
    m.inputs.push_back(std::move(mfs));
  }
  const int n_rules = static_cast<int>(cells);
  for (int r = 0; r < n_rules; ++r) {
    Rule rule;
    rule.antecedent.resize(n_inputs);
    int rem = r;
    for (int j = n_inputs - 1; j >= 0; --j) {
      rule.antecedent[j] = rem % mfs_per_input;
      rem /= mfs_per_input;
    }
    rule.consequent.assign(n_inputs + 1, 0.0);
    m.rules.push_back(std::move(rule));
  }
  return m;
}

}  // namespace anpso
