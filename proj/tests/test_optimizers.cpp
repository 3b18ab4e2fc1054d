#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "anpso/baselines.hpp"
#include "anpso/bench.hpp"
#include "anpso/ea.hpp"
#include "anpso/pso.hpp"

using namespace anpso;

TEST_CASE("Bounds helpers validate and construct") {
  const Bounds b = Bounds::uniform(3, -2.0, 5.0);
  CHECK(b.dims() == 3);
  CHECK(b.lo[0] == -2.0);
  CHECK(b.hi[2] == 5.0);
  CHECK_NOTHROW(b.validate());
  Bounds bad = b;
  bad.hi[1] = -2.0;  // lo == hi is invalid
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  Bounds mismatched = b;
  mismatched.hi.resize(2);
  CHECK_THROWS_AS(mismatched.validate(), std::invalid_argument);
}

TEST_CASE("pso_init seeds a valid swarm deterministically") {
  const Bounds b = Bounds::uniform(4, -3.0, 3.0);
  PSOConfig cfg;
  cfg.n_particles = 12;
  cfg.seed = 7;
  const SwarmState st = pso_init(sphere, b, cfg);
  CHECK(st.x.rows() == 12);
  CHECK(st.x.cols() == 4);
  CHECK(st.evals == 12);
  CHECK(st.iter == 0);
  const double vmax = 0.2 * 6.0;
  for (int p = 0; p < 12; ++p) {
    for (int j = 0; j < 4; ++j) {
      CHECK(st.x(p, j) >= -3.0);
      CHECK(st.x(p, j) <= 3.0);
      CHECK(std::abs(st.v(p, j)) <= vmax + 1e-12);
      CHECK(st.v_max[j] == doctest::Approx(vmax));
    }
    CHECK((st.pbest_x.row(p) - st.x.row(p)).norm() == 0.0);
    CHECK(st.pbest_f[p] == doctest::Approx(sphere(st.x.row(p).transpose())));
    CHECK(st.gbest_f <= st.pbest_f[p]);
  }
  const SwarmState st2 = pso_init(sphere, b, cfg);
  CHECK((st2.x - st.x).norm() == 0.0);
  CHECK((st2.v - st.v).norm() == 0.0);
  CHECK(st2.gbest_f == st.gbest_f);
}

TEST_CASE("pso_step_with applies the canonical update under forced draws") {
  // One particle, one dimension, everything hand-computable.
  const Bounds b = Bounds::uniform(1, -10.0, 10.0);
  SwarmState st;
  st.x = Eigen::MatrixXd::Constant(1, 1, 2.0);
  st.v = Eigen::MatrixXd::Constant(1, 1, 0.5);
  st.pbest_x = Eigen::MatrixXd::Constant(1, 1, 1.0);
  st.pbest_f = Eigen::VectorXd::Constant(1, 1.0);
  st.gbest_x = Eigen::VectorXd::Constant(1, -1.0);
  st.gbest_f = 1.0;
  st.v_max = Eigen::VectorXd::Constant(1, 4.0);

  // r1 = 0.25 (drawn first), r2 = 0.75.
  double draws[] = {0.25, 0.75};
  int at = 0;
  auto forced = [&](Rng&) { return draws[at++]; };
  const double w = 0.7, c1 = 1.5, c2 = 1.5;
  detail::pso_step_with(st, sphere, b, w, c1, c2, forced);

  const double vel = 0.7 * 0.5 + 1.5 * 0.25 * (1.0 - 2.0) + 1.5 * 0.75 * (-1.0 - 2.0);
  const double pos = 2.0 + vel;  // inside the box, |vel| < v_max
  CHECK(st.v(0, 0) == doctest::Approx(vel).epsilon(1e-15));
  CHECK(st.x(0, 0) == doctest::Approx(pos).epsilon(1e-15));
  CHECK(st.iter == 1);
  CHECK(st.evals == 1);
  // sphere(pos) > pbest_f, so bests are unchanged (strict improvement only).
  CHECK(st.pbest_f[0] == 1.0);
  CHECK(st.pbest_x(0, 0) == 1.0);
}

TEST_CASE("pso_step_with clamps velocity and zeroes it at the boundary") {
  const Bounds b = Bounds::uniform(1, -1.0, 1.0);
  SwarmState st;
  st.x = Eigen::MatrixXd::Constant(1, 1, 0.9);
  st.v = Eigen::MatrixXd::Constant(1, 1, 0.0);
  st.pbest_x = Eigen::MatrixXd::Constant(1, 1, 0.9);
  st.pbest_f = Eigen::VectorXd::Constant(1, sphere(Eigen::VectorXd::Constant(1, 0.9)));
  st.gbest_x = Eigen::VectorXd::Constant(1, 50.0);  // pulls far out of the box
  st.gbest_f = 0.0;
  st.v_max = Eigen::VectorXd::Constant(1, 0.4);

  auto ones = [](Rng&) { return 1.0; };
  detail::pso_step_with(st, sphere, b, 0.7, 1.5, 1.5, ones);
  // Raw velocity 1.5*(50-0.9) = 73.65 clamps to v_max = 0.4, position
  // 0.9 + 0.4 = 1.3 clamps to 1.0 with the velocity zeroed.
  CHECK(st.x(0, 0) == 1.0);
  CHECK(st.v(0, 0) == 0.0);
}

TEST_CASE("non-finite objective values are quarantined as +inf") {
  const Bounds b = Bounds::uniform(1, -1.0, 1.0);
  PSOConfig cfg;
  cfg.n_particles = 8;
  cfg.max_iters = 5;
  cfg.seed = 3;
  auto nasty = [](const Eigen::VectorXd& x) {
    return x[0] < 0.0 ? std::numeric_limits<double>::quiet_NaN() : x[0];
  };
  const OptResult res = pso_optimize(nasty, b, cfg);
  CHECK(res.nan_evals > 0);
  CHECK(std::isfinite(res.best_f));
  CHECK(res.best_f >= 0.0);
}

TEST_CASE("pso_optimize solves sphere and keeps its accounting straight") {
  const Bounds b = Bounds::uniform(2, -5.0, 5.0);
  PSOConfig cfg;
  cfg.seed = 1;
  const OptResult res = pso_optimize(sphere, b, cfg);
  CHECK(res.best_f <= 1e-4);
  CHECK(res.evals == 30 * 201);  // init + one eval per particle per iter
  REQUIRE(static_cast<int>(res.trace.size()) == 200);
  CHECK(res.trace.front().iter == 1);
  CHECK(res.trace.back().iter == 200);
  for (std::size_t i = 1; i < res.trace.size(); ++i)
    CHECK(res.trace[i].gbest_f <= res.trace[i - 1].gbest_f);  // monotone
  for (const auto& rec : res.trace) {
    CHECK(rec.w == doctest::Approx(0.7));
    CHECK(rec.c1 == doctest::Approx(1.5));
    CHECK(rec.c2 == doctest::Approx(1.5));
  }
  CHECK(res.best_f == res.trace.back().gbest_f);
  // Deterministic replay.
  const OptResult res2 = pso_optimize(sphere, b, cfg);
  CHECK(res2.best_f == res.best_f);
  CHECK((res2.best_x - res.best_x).norm() == 0.0);
}

TEST_CASE("pso trace CSV is well-formed") {
  const Bounds b = Bounds::uniform(2, -5.0, 5.0);
  PSOConfig cfg;
  cfg.n_particles = 5;
  cfg.max_iters = 3;
  const OptResult res = pso_optimize(sphere, b, cfg);
  const std::string csv = pso_trace_csv(res.trace);
  CHECK(csv.rfind("iter,gbest_f,evals,w,c1,c2\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("ea_sigma_update implements the 1/5 rule exactly") {
  EAConfig cfg;  // f_up = 1.5, f_down = 1.5^(-1/4)
  CHECK(ea_sigma_update(0.1, true, cfg) == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(ea_sigma_update(0.1, false, cfg) ==
        doctest::Approx(0.0903602003609845).epsilon(1e-14));
  EAConfig v2 = cfg;
  v2.variant = EAVariant::V2;
  CHECK(ea_sigma_update(0.1, true, v2) == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(ea_sigma_update(0.1, false, v2) == 0.1);  // V2 never shrinks
  // The floor binds in both variants.
  cfg.sigma_min = 1e-3;
  CHECK(ea_sigma_update(1e-3, false, cfg) == 1e-3);
  CHECK(ea_sigma_update(5e-4, true, cfg) >= 1e-3);
}

TEST_CASE("V2 step size dominates V1 over any success history") {
  EAConfig v1;
  EAConfig v2;
  v2.variant = EAVariant::V2;
  Rng rng(17);
  double s1 = 1.0, s2 = 1.0;
  for (int i = 0; i < 200; ++i) {
    const bool success = uniform01(rng) < 0.3;
    s1 = ea_sigma_update(s1, success, v1);
    s2 = ea_sigma_update(s2, success, v2);
    CHECK(s2 >= s1);
  }
  CHECK(s2 > s1);  // failures happened, so the gap is strict
}

TEST_CASE("mutate_with mutates exactly the forced genes and clamps") {
  const Bounds b = Bounds::uniform(3, -1.0, 1.0);
  Eigen::VectorXd x(3);
  x << 0.0, 0.5, 0.9;
  Rng rng(1);
  // Gene 0 mutates (0.1 < 0.5), gene 1 does not (0.9), gene 2 does (0.2).
  double us[] = {0.1, 0.9, 0.2};
  double ns[] = {2.0, 3.0};  // only mutated genes consume normals
  int ui = 0, ni = 0;
  auto u = [&](Rng&) { return us[ui++]; };
  auto g = [&](Rng&) { return ns[ni++]; };
  const Eigen::VectorXd y = detail::mutate_with(x, 0.1, 0.5, b, rng, u, g);
  CHECK(y[0] == doctest::Approx(0.2).epsilon(1e-15));  // 0 + 0.1*2
  CHECK(y[1] == 0.5);                                  // untouched
  CHECK(y[2] == 1.0);  // 0.9 + 0.3 clamps to the box
  CHECK(ui == 3);
  CHECK(ni == 2);
}

TEST_CASE("ea_optimize solves sphere with a classic (1+1)-ES setup") {
  const Bounds b = Bounds::uniform(10, -5.0, 5.0);
  EAConfig cfg;
  cfg.generations = 5000;
  cfg.mutation_prob = 1.0;
  cfg.seed = 1;
  const EAResult res = ea_optimize(sphere, b, cfg);
  CHECK(res.best_f <= 1e-6);
  CHECK(res.evals == 5001);  // parent + one child per generation
  CHECK(res.initial_f >= res.best_f);
  CHECK(res.sigma_final > 0.0);
  REQUIRE(static_cast<int>(res.trace.size()) == 5000);
  // success_count matches the trace and the sigma trajectory replays
  // through ea_sigma_update.
  int successes = 0;
  double sigma = cfg.sigma0;
  for (const auto& g : res.trace) {
    if (g.success) ++successes;
    sigma = ea_sigma_update(sigma, g.success, cfg);
    CHECK(g.sigma == sigma);
  }
  CHECK(successes == res.success_count);
  // Best-so-far column is monotone.
  for (std::size_t i = 1; i < res.trace.size(); ++i)
    CHECK(res.trace[i].best_f <= res.trace[i - 1].best_f);
}

TEST_CASE("ea_optimize starts from x0 when given") {
  const Bounds b = Bounds::uniform(3, -5.0, 5.0);
  EAConfig cfg;
  cfg.generations = 1;
  cfg.seed = 9;
  Eigen::VectorXd x0(3);
  x0 << 1.0, -2.0, 30.0;  // clamps to 5
  const EAResult res = ea_optimize(sphere, b, cfg, x0);
  CHECK(res.initial_f == doctest::Approx(1.0 + 4.0 + 25.0));
  // Elitism: the result can only improve on the start.
  CHECK(res.best_f <= res.initial_f);
}

TEST_CASE("ea default mutation probability is 1/dims") {
  // With dims = 1 the default rate means every generation mutates the one
  // gene; convergence on a 1-d sphere is then guaranteed to make progress.
  const Bounds b = Bounds::uniform(1, -5.0, 5.0);
  EAConfig cfg;
  cfg.generations = 800;
  cfg.seed = 4;
  const EAResult res = ea_optimize(sphere, b, cfg);
  CHECK(res.best_f <= 1e-6);
}

TEST_CASE("baselines solve sphere within their sanity budgets") {
  const Bounds b = Bounds::uniform(5, -5.0, 5.0);
  BaselineConfig cfg;
  cfg.population = 20;
  cfg.max_evals = 2000;
  cfg.seed = 1;

  const BaselineResult ga = ga_optimize(sphere, b, cfg);
  CHECK(ga.best_f <= 1e-2);
  CHECK(ga.evals >= 2000);
  CHECK(ga.evals < 2000 + cfg.population);  // overshoot < one generation

  const BaselineResult de = de_optimize(sphere, b, cfg);
  CHECK(de.best_f <= 1e-3);
  CHECK(de.evals == 2000);  // exact stop

  const BaselineResult hs = hs_optimize(sphere, b, cfg);
  CHECK(hs.best_f <= 1e-2);
  CHECK(hs.evals == 2000);

  // Monotone best-so-far traces, deterministic replay.
  for (const auto* r : {&ga, &de, &hs}) {
    REQUIRE(!r->trace.empty());
    for (std::size_t i = 1; i < r->trace.size(); ++i)
      CHECK(r->trace[i].best_f <= r->trace[i - 1].best_f);
  }
  const BaselineResult de2 = de_optimize(sphere, b, cfg);
  CHECK(de2.best_f == de.best_f);
  CHECK((de2.best_x - de.best_x).norm() == 0.0);
}

TEST_CASE("baseline configs are validated") {
  const Bounds b = Bounds::uniform(2, -1.0, 1.0);
  BaselineConfig bad;
  bad.population = 3;
  CHECK_THROWS_AS(ga_optimize(sphere, b, bad), std::invalid_argument);
  BaselineConfig tiny;
  tiny.population = 10;
  tiny.max_evals = 5;
  CHECK_THROWS_AS(de_optimize(sphere, b, tiny), std::invalid_argument);
}

TEST_CASE("bench objectives have the textbook minima") {
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(6);
  CHECK(sphere(zero) == 0.0);
  CHECK(rastrigin(zero) == doctest::Approx(0.0).epsilon(1e-12));
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(2);
  CHECK(sphere(ones) == 2.0);
  CHECK(rastrigin(ones) == doctest::Approx(2.0).epsilon(1e-9));  // cos(2*pi)=1
}
