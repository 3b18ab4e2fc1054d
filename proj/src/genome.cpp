#include "anpso/genome.hpp"

#include <cmath>
#include <stdexcept>

namespace anpso {

int genome_length(int n_inputs) {
  // rule count + MF counts + MF kinds + shape block + antecedent block
  return 1 + n_inputs + n_inputs + n_inputs * kMaxMFs * 2 + kMaxRules * n_inputs;
}

int int_gene(double g, int k) {
  if (g < 0.0) g = 0.0;
  if (g > 1.0) g = 1.0;
  const int v = static_cast<int>(std::floor(g * k));
  return v >= k ? k - 1 : v;
}

FISModel decode(const Eigen::VectorXd& genome, int n_inputs) {
  const int n = n_inputs;
  if (genome.size() != genome_length(n))
    throw std::invalid_argument("decode: genome length mismatch");

  const int kind_base = 1 + n;
  const int shape_base = 1 + 2 * n;
  const int ant_base = shape_base + n * kMaxMFs * 2;

  const int n_rules = 1 + int_gene(genome[0], kMaxRules);

  FISModel m;
  m.first_order = true;
  std::vector<int> mf_counts(n);
  for (int j = 0; j < n; ++j) {
    mf_counts[j] = 1 + int_gene(genome[1 + j], kMaxMFs);
    const int kind_idx = int_gene(genome[kind_base + j], 3);
    std::vector<MembershipFunction> mfs;
    for (int mf = 0; mf < mf_counts[j]; ++mf) {
      const int at = shape_base + (j * kMaxMFs + mf) * 2;
      double c = genome[at];
      double w = genome[at + 1];
      if (c < 0.0) c = 0.0;
      if (c > 1.0) c = 1.0;
      if (w < 0.0) w = 0.0;
      if (w > 1.0) w = 1.0;
      switch (kind_idx) {
        case 0:
          mfs.push_back(MembershipFunction::triangle(c - w, c, c + w));
          break;
        case 1:
          mfs.push_back(MembershipFunction::gaussian(c, std::max(w / 2.0, 1e-3)));
          break;
        default:
          mfs.push_back(
              MembershipFunction::trapezoid(c - w, c - w / 2.0, c + w / 2.0, c + w));
          break;
      }
    }
    m.inputs.push_back(std::move(mfs));
  }
  for (int r = 0; r < n_rules; ++r) {
    Rule rule;
    rule.antecedent.resize(n);
    for (int j = 0; j < n; ++j)
      rule.antecedent[j] =
          int_gene(genome[ant_base + r * n + j], kMaxMFs) % mf_counts[j];
    rule.consequent.assign(n + 1, 0.0);
    m.rules.push_back(std::move(rule));
  }
  m.validate();
  return m;
}

FitnessReport fitness(const Eigen::VectorXd& genome, const Dataset& train,
                      const Dataset& val, const TrainConfig& train_cfg) {
  FitnessReport rep;
  rep.genome = genome;
  const FISModel model = decode(genome, train.n_features());
  const TrainResult tr = train_anfis(model, train, &val, train_cfg);
  rep.model_summary = describe_model(tr.model);
  rep.epochs_used = static_cast<int>(tr.trace.epochs.size());
  rep.diverged = tr.diverged;
  rep.train_rmse = tr.final_train_rmse;
  rep.validation_rmse = tr.final_val_rmse;
  if (tr.diverged || !std::isfinite(rep.validation_rmse)) {
    rep.diverged = true;
    rep.validation_rmse = kFitnessPenalty;
  }
  return rep;
}

}  // namespace anpso
