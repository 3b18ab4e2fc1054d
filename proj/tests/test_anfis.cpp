#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <vector>

#include "anpso/anfis.hpp"
#include "anpso/dataset.hpp"
#include "anpso/fis.hpp"
#include "anpso/metrics.hpp"

using namespace anpso;

namespace {

// Frozen 20-sample, 2-input, 2-rule instance for the consequent solver.
// Computed independently with a reference pseudo-inverse implementation;
// the exact solve must reproduce theta to 1e-6.
struct Sample {
  double x0, x1, t;
};
const Sample kSamples[20] = {
    {0.7740, 0.4389, 1.450540},  {0.8586, 0.6974, 1.419847},
    {0.0942, 0.9756, -0.230290}, {0.7611, 0.7861, 1.202767},
    {0.1281, 0.4504, 0.200720},  {0.3708, 0.9268, 0.457880},
    {0.6439, 0.8228, 1.007541},  {0.4434, 0.2272, 0.902397},
    {0.5546, 0.0638, 1.123240},  {0.8276, 0.6317, 1.436039},
    {0.7581, 0.3545, 1.442226},  {0.9707, 0.8931, 1.247497},
    {0.7784, 0.1946, 1.487500},  {0.4667, 0.0438, 0.989524},
    {0.1543, 0.6830, 0.109418},  {0.7448, 0.9675, 0.975357},
    {0.3258, 0.3705, 0.634006},  {0.4696, 0.1895, 0.958323},
    {0.1299, 0.4757, 0.188018},  {0.2269, 0.6698, 0.280630},
};
const double kTheta[6] = {1.464731277072891,  -0.767320675849574,
                          0.382310607055920,  1.114424647367754,
                          -0.759259430639105, 0.917207033286454};
const double kResidualRmse = 0.04249118999770652;

FISModel frozen_model() {
  FISModel m;
  m.inputs = {{MembershipFunction::gaussian(0.25, 0.15),
               MembershipFunction::gaussian(0.75, 0.20)},
              {MembershipFunction::gaussian(0.30, 0.25),
               MembershipFunction::gaussian(0.70, 0.15)}};
  m.rules.resize(2);
  m.rules[0].antecedent = {0, 0};
  m.rules[0].consequent = {0.0, 0.0, 0.0};
  m.rules[1].antecedent = {1, 1};
  m.rules[1].consequent = {0.0, 0.0, 0.0};
  m.first_order = true;
  return m;
}

Dataset frozen_data() {
  std::ostringstream csv;
  // Full precision: the default 6-significant-digit stream formatting would
  // silently round 7-digit targets like 1.247497 and shift the LSE solution.
  csv << std::setprecision(17);
  for (const auto& s : kSamples) csv << s.x0 << ',' << s.x1 << ',' << s.t << '\n';
  return parse_csv_last_target(csv.str());
}

// Smooth, learnable surface for the training-loop tests.
Dataset sine_surface(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::ostringstream csv;
  for (int i = 0; i < n; ++i) {
    const double a = u(rng), b = u(rng);
    const double y = 1.5 * a - 0.8 * b + 0.3 + 0.4 * std::sin(3.0 * a * b);
    csv << a << ',' << b << ',' << y << '\n';
  }
  return parse_csv_last_target(csv.str());
}

}  // namespace

TEST_CASE("lse_design has rule-major normalized-firing blocks") {
  const FISModel m = frozen_model();
  const Dataset d = frozen_data();
  const Eigen::MatrixXd A = lse_design(m, d);
  REQUIRE(A.rows() == 20);
  REQUIRE(A.cols() == 6);
  // Hand-build row 0.
  const auto fs = fire_rules(m, d.row(0));
  const double x0 = d.features(0, 0), x1 = d.features(0, 1);
  CHECK(A(0, 0) == doctest::Approx(fs.normalized[0] * x0).epsilon(1e-15));
  CHECK(A(0, 1) == doctest::Approx(fs.normalized[0] * x1).epsilon(1e-15));
  CHECK(A(0, 2) == doctest::Approx(fs.normalized[0]).epsilon(1e-15));
  CHECK(A(0, 3) == doctest::Approx(fs.normalized[1] * x0).epsilon(1e-15));
  CHECK(A(0, 5) == doctest::Approx(fs.normalized[1]).epsilon(1e-15));
}

TEST_CASE("exact LSE reproduces the frozen solution") {
  FISModel m = frozen_model();
  const Dataset d = frozen_data();
  const LSEResult res = lse_consequents(m, d);  // ridge_lambda = 0
  REQUIRE(res.theta.size() == 6);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(res.theta[i] - kTheta[i]) <= 1e-6);
  CHECK(std::abs(res.residual_rmse - kResidualRmse) <= 1e-9);
  CHECK_FALSE(res.rank_deficient);
  // Solution is written back into the consequents, rule-major.
  CHECK(m.rules[0].consequent[0] == doctest::Approx(kTheta[0]).epsilon(1e-12));
  CHECK(m.rules[1].consequent[2] == doctest::Approx(kTheta[5]).epsilon(1e-12));
}

TEST_CASE("exact LSE residual is orthogonal to the design columns") {
  FISModel m = frozen_model();
  const Dataset d = frozen_data();
  const Eigen::MatrixXd A = lse_design(m, d);
  const LSEResult res = lse_consequents(m, d);
  const Eigen::VectorXd r = A * res.theta - d.targets;
  CHECK((A.transpose() * r).lpNorm<Eigen::Infinity>() <= 1e-6);
}

TEST_CASE("ridge solve shrinks toward the exact solution as lambda vanishes") {
  const Dataset d = frozen_data();
  FISModel exact = frozen_model();
  const LSEResult res0 = lse_consequents(exact, d);
  FISModel nearly = frozen_model();
  const LSEResult res_eps = lse_consequents(nearly, d, 1e-12);
  CHECK((res_eps.theta - res0.theta).lpNorm<Eigen::Infinity>() <= 1e-6);

  FISModel ridged = frozen_model();
  const LSEResult res_l = lse_consequents(ridged, d, 1e-2);
  // Ridge trades residual for coefficient size.
  CHECK(res_l.residual_rmse >= res0.residual_rmse);
  CHECK(res_l.theta.norm() < res0.theta.norm());
  CHECK(std::isfinite(res_l.residual_rmse));
}

TEST_CASE("premise parameter vector round-trips input-major") {
  FISModel m = frozen_model();
  REQUIRE(premise_param_count(m) == 8);  // 4 gaussians x 2 params
  const Eigen::VectorXd p = get_premise_params(m);
  CHECK(p[0] == doctest::Approx(0.25));
  CHECK(p[1] == doctest::Approx(0.15));
  CHECK(p[2] == doctest::Approx(0.75));
  CHECK(p[7] == doctest::Approx(0.15));
  Eigen::VectorXd q = p;
  q[0] = 0.33;
  set_premise_params(m, q);
  CHECK(m.inputs[0][0].params[0] == doctest::Approx(0.33));
  // Writing back repairs: a negative sigma is floored.
  q[1] = -5.0;
  set_premise_params(m, q);
  CHECK(m.inputs[0][0].params[1] == doctest::Approx(kSigmaMin));
}

TEST_CASE("premise gradient matches finite differences") {
  FISModel m = frozen_model();
  const Dataset d = frozen_data();
  lse_consequents(m, d, 1e-3);  // non-trivial consequents
  const Eigen::VectorXd g = premise_gradients(m, d);
  const Eigen::VectorXd p = get_premise_params(m);
  REQUIRE(g.size() == p.size());
  const double h = 1e-6;
  auto loss = [&](const Eigen::VectorXd& params) {
    FISModel probe = m;
    set_premise_params(probe, params);
    const auto pred = predict(probe, d);
    return mse(pred, d.targets_vec());
  };
  for (int i = 0; i < p.size(); ++i) {
    Eigen::VectorXd lo = p, hi = p;
    lo[i] -= h;
    hi[i] += h;
    const double fd = (loss(hi) - loss(lo)) / (2.0 * h);
    CHECK(g[i] == doctest::Approx(fd).epsilon(1e-4).scale(1.0));
  }
}

TEST_CASE("consequent gradient matches finite differences exactly") {
  FISModel m = frozen_model();
  const Dataset d = frozen_data();
  lse_consequents(m, d, 1e-1);  // away from the optimum: nonzero gradient
  const Eigen::VectorXd g = consequent_gradients(m, d);
  REQUIRE(g.size() == 6);
  const double h = 1e-6;
  for (int i = 0; i < 6; ++i) {
    FISModel lo = m, hi = m;
    lo.rules[i / 3].consequent[i % 3] -= h;
    hi.rules[i / 3].consequent[i % 3] += h;
    const double fd = (mse(predict(hi, d), d.targets_vec()) -
                       mse(predict(lo, d), d.targets_vec())) /
                      (2.0 * h);
    CHECK(g[i] == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
  }
  // At the exact LSE optimum the consequent gradient vanishes.
  FISModel opt = frozen_model();
  lse_consequents(opt, d);
  CHECK(consequent_gradients(opt, d).lpNorm<Eigen::Infinity>() <= 1e-9);
}

TEST_CASE("predict and evaluate_rmse agree") {
  FISModel m = frozen_model();
  const Dataset d = frozen_data();
  lse_consequents(m, d);
  int degenerate = -1;
  const auto pred = predict(m, d, &degenerate);
  CHECK(degenerate == 0);
  CHECK(evaluate_rmse(m, d) ==
        doctest::Approx(rmse(pred, d.targets_vec())).epsilon(1e-15));
}

TEST_CASE("hybrid training reduces the error and records a full trace") {
  const Dataset train = sine_surface(120, 21);
  const Dataset val = sine_surface(40, 22);
  TrainConfig cfg;
  cfg.epochs = 15;
  cfg.learning_rate = 0.05;
  const TrainResult res =
      train_anfis(default_model(2, 4, 0.35), train, &val, cfg);
  REQUIRE(static_cast<int>(res.trace.epochs.size()) == 15);
  CHECK(res.trace.epochs.front().epoch == 1);
  CHECK(res.trace.epochs.back().epoch == 15);
  CHECK_FALSE(res.diverged);
  CHECK(res.final_train_rmse <= res.trace.epochs.front().train_rmse + 1e-12);
  CHECK(res.final_train_rmse < 0.1);  // the surface is easy
  CHECK(std::isfinite(res.final_val_rmse));
  for (const auto& e : res.trace.epochs) CHECK(std::isfinite(e.val_rmse));
  // Without a validation set the column stays NaN.
  const TrainResult noval =
      train_anfis(default_model(2, 4, 0.35), train, nullptr, cfg);
  CHECK(std::isnan(noval.trace.epochs.front().val_rmse));
  CHECK(std::isnan(noval.final_val_rmse));
}

TEST_CASE("hybrid beats backprop on the same budget") {
  const Dataset train = sine_surface(120, 21);
  TrainConfig hybrid;
  hybrid.epochs = 10;
  TrainConfig bp = hybrid;
  bp.mode = TrainMode::Backprop;
  const double h =
      train_anfis(default_model(2, 4, 0.35), train, nullptr, hybrid).final_train_rmse;
  const double b =
      train_anfis(default_model(2, 4, 0.35), train, nullptr, bp).final_train_rmse;
  CHECK(h < b);
}

TEST_CASE("training is deterministic") {
  const Dataset train = sine_surface(80, 31);
  TrainConfig cfg;
  cfg.epochs = 8;
  const TrainResult a = train_anfis(default_model(2, 3, 0.4), train, nullptr, cfg);
  const TrainResult b = train_anfis(default_model(2, 3, 0.4), train, nullptr, cfg);
  CHECK(a.final_train_rmse == b.final_train_rmse);
  CHECK(a.trace.to_csv() == b.trace.to_csv());
  CHECK(model_to_json(a.model) == model_to_json(b.model));
}

TEST_CASE("trace CSV has the expected header and rows") {
  const Dataset train = sine_surface(60, 41);
  TrainConfig cfg;
  cfg.epochs = 3;
  const TrainResult res = train_anfis(default_model(2, 2, 0.4), train, nullptr, cfg);
  const std::string csv = res.trace.to_csv();
  CHECK(csv.rfind("epoch,train_rmse,val_rmse,degenerate_rows\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 epochs
}

TEST_CASE("default_model wires rule i to MF i of every input") {
  const FISModel m = default_model(3, 4);
  CHECK(m.n_inputs() == 3);
  CHECK(m.n_rules() == 4);
  for (int j = 0; j < 3; ++j) CHECK(m.inputs[j].size() == 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) CHECK(m.rules[i].antecedent[j] == i);
  CHECK_NOTHROW(m.validate());
  // Centers are evenly spaced across [0,1].
  CHECK(m.inputs[0][0].params[0] == doctest::Approx(0.0));
  CHECK(m.inputs[0][3].params[0] == doctest::Approx(1.0));
}

TEST_CASE("default_model_from_data is deterministic and in-range") {
  const Dataset train = normalize(sine_surface(90, 51));
  const FISModel a = default_model_from_data(train, 5);
  const FISModel b = default_model_from_data(train, 5);
  CHECK(model_to_json(a) == model_to_json(b));
  CHECK(a.n_rules() == 5);
  for (int j = 0; j < a.n_inputs(); ++j) {
    CHECK(a.inputs[j].size() == 5);
    for (const auto& mf : a.inputs[j]) {
      CHECK(mf.kind == MFKind::Gaussian);
      CHECK(mf.params[0] >= -1e-9);
      CHECK(mf.params[0] <= 1.0 + 1e-9);
      CHECK(mf.params[1] > 0.0);
    }
  }
  CHECK_NOTHROW(a.validate());
}
