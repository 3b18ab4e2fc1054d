#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "anpso/fis.hpp"

using namespace anpso;

namespace {

// Two-input, two-rule first-order model with well-separated Gaussians.
FISModel tiny_model() {
  FISModel m;
  m.inputs = {{MembershipFunction::gaussian(0.25, 0.15),
               MembershipFunction::gaussian(0.75, 0.20)},
              {MembershipFunction::gaussian(0.30, 0.25),
               MembershipFunction::gaussian(0.70, 0.15)}};
  m.rules.resize(2);
  m.rules[0].antecedent = {0, 0};
  m.rules[0].consequent = {1.0, -0.5, 0.2};
  m.rules[1].antecedent = {1, 1};
  m.rules[1].consequent = {-0.3, 0.8, 0.1};
  m.first_order = true;
  return m;
}

double fd_grad(const MembershipFunction& mf, double x, int p, double h = 1e-6) {
  MembershipFunction lo = mf, hi = mf;
  lo.params[p] -= h;
  hi.params[p] += h;
  return (hi.eval(x) - lo.eval(x)) / (2.0 * h);
}

}  // namespace

TEST_CASE("factories repair out-of-order parameters") {
  const auto t = MembershipFunction::triangle(3.0, 1.0, 2.0);
  CHECK(t.params == std::vector<double>{1.0, 2.0, 3.0});
  const auto z = MembershipFunction::trapezoid(4.0, 1.0, 3.0, 2.0);
  CHECK(z.params == std::vector<double>{1.0, 2.0, 3.0, 4.0});
  const auto g = MembershipFunction::gaussian(0.5, -2.0);
  CHECK(g.params[0] == doctest::Approx(0.5));  // center untouched
  CHECK(g.params[1] == doctest::Approx(kSigmaMin));
}

TEST_CASE("triangle evaluates piecewise with a unit peak") {
  const auto t = MembershipFunction::triangle(0.0, 1.0, 3.0);
  CHECK(t.eval(-0.5) == 0.0);
  CHECK(t.eval(0.0) == 0.0);
  CHECK(t.eval(0.5) == doctest::Approx(0.5));
  CHECK(t.eval(1.0) == 1.0);  // exact peak
  CHECK(t.eval(2.0) == doctest::Approx(0.5));
  CHECK(t.eval(3.0) == 0.0);
  CHECK(t.eval(9.0) == 0.0);
  // Right-degenerate triangle stays continuous at the collapsed edge.
  const auto d = MembershipFunction::triangle(0.0, 1.0, 1.0);
  CHECK(d.eval(1.0) == 1.0);
  CHECK(d.eval(0.5) == doctest::Approx(0.5));
  CHECK(d.eval(1.0001) == 0.0);
}

TEST_CASE("trapezoid evaluates with a plateau") {
  const auto z = MembershipFunction::trapezoid(0.0, 1.0, 2.0, 4.0);
  CHECK(z.eval(0.5) == doctest::Approx(0.5));
  CHECK(z.eval(1.0) == 1.0);
  CHECK(z.eval(1.5) == 1.0);
  CHECK(z.eval(2.0) == 1.0);
  CHECK(z.eval(3.0) == doctest::Approx(0.5));
  CHECK(z.eval(4.0) == 0.0);
  CHECK(z.eval(-1.0) == 0.0);
}

TEST_CASE("gaussian evaluates symmetrically around the center") {
  const auto g = MembershipFunction::gaussian(2.0, 0.5);
  CHECK(g.eval(2.0) == 1.0);
  CHECK(g.eval(2.5) == doctest::Approx(std::exp(-0.5)));
  CHECK(g.eval(1.5) == doctest::Approx(g.eval(2.5)));
  CHECK(g.eval(100.0) == doctest::Approx(0.0));
}

TEST_CASE("analytic MF gradients match finite differences in the interior") {
  const std::vector<MembershipFunction> mfs = {
      MembershipFunction::triangle(0.0, 1.0, 3.0),
      MembershipFunction::gaussian(0.4, 0.3),
      MembershipFunction::trapezoid(0.0, 1.0, 2.0, 4.0),
  };
  const std::vector<std::vector<double>> probes = {
      {0.3, 0.7, 1.4, 2.6},          // both triangle ramps
      {0.1, 0.35, 0.8, 1.2},         // around the gaussian center
      {0.4, 0.8, 2.5, 3.6},          // both trapezoid ramps
  };
  for (std::size_t k = 0; k < mfs.size(); ++k) {
    for (double x : probes[k]) {
      for (int p = 0; p < static_cast<int>(mfs[k].params.size()); ++p) {
        const double analytic = mfs[k].grad(x, p);
        const double numeric = fd_grad(mfs[k], x, p);
        CHECK(analytic == doctest::Approx(numeric).epsilon(1e-4).scale(1.0));
      }
    }
  }
}

TEST_CASE("gradients are zero at kinks and outside the support") {
  const auto t = MembershipFunction::triangle(0.0, 1.0, 3.0);
  for (int p = 0; p < 3; ++p) {
    CHECK(t.grad(1.0, p) == 0.0);   // peak
    CHECK(t.grad(0.0, p) == 0.0);   // left kink
    CHECK(t.grad(-2.0, p) == 0.0);  // outside
    CHECK(t.grad(5.0, p) == 0.0);
  }
  const auto z = MembershipFunction::trapezoid(0.0, 1.0, 2.0, 4.0);
  for (int p = 0; p < 4; ++p) CHECK(z.grad(1.5, p) == 0.0);  // plateau
}

TEST_CASE("fire_rules computes the product t-norm and normalizes") {
  const FISModel m = tiny_model();
  const std::vector<double> x{0.4, 0.5};
  const auto fs = fire_rules(m, x);
  const double w0 = m.inputs[0][0].eval(0.4) * m.inputs[1][0].eval(0.5);
  const double w1 = m.inputs[0][1].eval(0.4) * m.inputs[1][1].eval(0.5);
  REQUIRE(fs.raw.size() == 2);
  CHECK(fs.raw[0] == doctest::Approx(w0).epsilon(1e-15));
  CHECK(fs.raw[1] == doctest::Approx(w1).epsilon(1e-15));
  CHECK(fs.normalized[0] + fs.normalized[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fs.normalized[0] == doctest::Approx(w0 / (w0 + w1)).epsilon(1e-12));
  CHECK_FALSE(fs.degenerate);
}

TEST_CASE("all-zero firing falls back to uniform weights and flags it") {
  FISModel m = tiny_model();
  m.inputs = {{MembershipFunction::triangle(0.0, 0.1, 0.2),
               MembershipFunction::triangle(0.3, 0.4, 0.5)},
              {MembershipFunction::triangle(0.0, 0.1, 0.2),
               MembershipFunction::triangle(0.3, 0.4, 0.5)}};
  const auto fs = fire_rules(m, {0.9, 0.9});  // outside every support
  CHECK(fs.degenerate);
  CHECK(fs.normalized[0] == doctest::Approx(0.5));
  CHECK(fs.normalized[1] == doctest::Approx(0.5));
  bool degenerate = false;
  const double y = infer(m, {0.9, 0.9}, &degenerate);
  CHECK(degenerate);
  CHECK(std::isfinite(y));
}

TEST_CASE("infer reproduces the weighted Sugeno output by hand") {
  const FISModel m = tiny_model();
  const std::vector<double> x{0.4, 0.5};
  const auto fs = fire_rules(m, x);
  const double f0 = 1.0 * 0.4 + -0.5 * 0.5 + 0.2;
  const double f1 = -0.3 * 0.4 + 0.8 * 0.5 + 0.1;
  const double expected = fs.normalized[0] * f0 + fs.normalized[1] * f1;
  CHECK(infer(m, x) == doctest::Approx(expected).epsilon(1e-14));

  const auto batch = infer_batch(m, {{0.4, 0.5}, {0.1, 0.9}});
  CHECK(batch.size() == 2);
  CHECK(batch[0] == doctest::Approx(expected).epsilon(1e-14));
  CHECK(batch[1] == doctest::Approx(infer(m, {0.1, 0.9})).epsilon(1e-14));
}

TEST_CASE("zero-order models use constant consequents") {
  FISModel m = tiny_model();
  m.first_order = false;
  m.rules[0].consequent = {2.0};
  m.rules[1].consequent = {-1.0};
  const auto fs = fire_rules(m, {0.4, 0.5});
  const double expected = fs.normalized[0] * 2.0 + fs.normalized[1] * -1.0;
  CHECK(infer(m, {0.4, 0.5}) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("rule order does not change the inference result") {
  FISModel m = tiny_model();
  FISModel swapped = m;
  std::swap(swapped.rules[0], swapped.rules[1]);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const std::vector<double> x{u(rng), u(rng)};
    CHECK(infer(m, x) == doctest::Approx(infer(swapped, x)).epsilon(1e-12));
  }
}

TEST_CASE("validate rejects structural violations") {
  CHECK_NOTHROW(tiny_model().validate());

  FISModel no_inputs;
  CHECK_THROWS_AS(no_inputs.validate(), std::invalid_argument);

  FISModel bad_ant = tiny_model();
  bad_ant.rules[0].antecedent = {0, 7};  // MF index out of range
  CHECK_THROWS_AS(bad_ant.validate(), std::invalid_argument);

  FISModel bad_arity = tiny_model();
  bad_arity.rules[1].antecedent = {0};  // wrong antecedent length
  CHECK_THROWS_AS(bad_arity.validate(), std::invalid_argument);

  FISModel bad_consequent = tiny_model();
  bad_consequent.rules[0].consequent = {1.0};  // first-order needs n+1
  CHECK_THROWS_AS(bad_consequent.validate(), std::invalid_argument);

  FISModel no_rules = tiny_model();
  no_rules.rules.clear();
  CHECK_THROWS_AS(no_rules.validate(), std::invalid_argument);
}

TEST_CASE("model JSON round-trips byte-identically and semantically") {
  const FISModel m = tiny_model();
  const std::string j1 = model_to_json(m);
  const FISModel back = model_from_json(j1);
  CHECK(model_to_json(back) == j1);
  CHECK(back.first_order == m.first_order);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const std::vector<double> x{u(rng), u(rng)};
    CHECK(infer(back, x) == infer(m, x));  // bitwise: same params
  }
  CHECK_THROWS(model_from_json("{"));
  CHECK_THROWS(model_from_json("{\"inputs\": []}"));
}

TEST_CASE("describe_model reports the structure") {
  const std::string text = describe_model(tiny_model());
  CHECK(text.find("2") != std::string::npos);
  CHECK(text.find("gaussian") != std::string::npos);
  CHECK(text.find("rule") != std::string::npos);
}
