#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "anpso/anpso.hpp"
#include "anpso/baselines.hpp"
#include "anpso/bench.hpp"
#include "anpso/ea.hpp"
#include "anpso/experiment.hpp"
#include "anpso/format.hpp"
#include "anpso/genome.hpp"
#include "anpso/synth.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

/// --out flag beats ANPSO_OUT_DIR beats the config value.
std::string resolve_out_dir(const std::string& flag_value,
                            const std::string& config_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("ANPSO_OUT_DIR"); env && *env) return env;
  return config_value;
}

int cmd_run(const std::string& config_path, const std::string& out_flag,
            bool seed_set, std::uint64_t seed) {
  anpso::ExperimentConfig cfg = anpso::config_from_json(slurp(config_path));
  if (seed_set) cfg.seed = seed;
  const std::string out_dir = resolve_out_dir(out_flag, cfg.out_dir);
  const anpso::Dataset raw = anpso::load_experiment_dataset(cfg);
  const anpso::ExperimentResult res = anpso::run_experiment(cfg, raw);
  anpso::write_experiment(res, cfg, out_dir);
  std::cout << anpso::stats_table_text(res.stats);
  std::cout << "artifacts: " << out_dir << "\n";
  return 0;
}

int cmd_tune(const anpso::ExperimentConfig& cfg, const std::string& out_flag) {
  const std::string out_dir = resolve_out_dir(out_flag, cfg.out_dir);
  const anpso::Dataset raw = anpso::load_experiment_dataset(cfg);
  const anpso::ExperimentResult res = anpso::run_experiment(cfg, raw);
  anpso::write_experiment(res, cfg, out_dir);
  std::cout << anpso::stats_table_text(res.stats);
  for (const auto& o : res.outcomes)
    std::cout << "run " << o.run << ": test_rmse "
              << anpso::format_double(o.test_rmse) << ", test_r "
              << anpso::format_double(o.test_r) << "\n";
  std::cout << "artifacts: " << out_dir << "\n";
  return 0;
}

int cmd_describe(const std::string& model_path) {
  const anpso::FISModel m = anpso::model_from_json(slurp(model_path));
  std::cout << anpso::describe_model(m);
  std::cout << "premise parameters: " << anpso::premise_param_count(m) << "\n";
  std::cout << "consequent parameters: " << m.n_rules() * m.consequent_size()
            << "\n";
  return 0;
}

int bench_sphere(std::uint64_t seed, int repeats) {
  using namespace anpso;
  std::cout << "suite: sphere (minima at 0)\n";
  auto line = [&](const char* name, double worst, double thresh) {
    std::cout << name << " worst of " << repeats << ": " << format_double(worst)
              << "  (sanity bound " << format_double(thresh) << ", "
              << (worst <= thresh ? "ok" : "MISS") << ")\n";
  };

  double worst = 0.0;
  for (int s = 0; s < repeats; ++s) {
    PSOConfig pc;
    pc.seed = mix_seed(seed, 10 + s);
    worst = std::max(worst,
                     pso_optimize(sphere, Bounds::uniform(2, -5, 5), pc).best_f);
  }
  line("pso   2d 200it x 30p ", worst, 1e-4);

  worst = 0.0;
  for (int s = 0; s < repeats; ++s) {
    EAConfig ec;
    ec.generations = 5000;
    ec.mutation_prob = 1.0;  // classic full-vector (1+1)-ES for the sanity run
    ec.seed = mix_seed(seed, 20 + s);
    worst = std::max(worst,
                     ea_optimize(sphere, Bounds::uniform(10, -5, 5), ec).best_f);
  }
  line("ea-v1 10d 5000 gens  ", worst, 1e-6);

  worst = 0.0;
  for (int s = 0; s < repeats; ++s) {
    BaselineConfig bc;
    bc.max_evals = 2000;
    bc.seed = mix_seed(seed, 30 + s);
    worst = std::max(worst,
                     ga_optimize(sphere, Bounds::uniform(2, -5, 5), bc).best_f);
  }
  line("ga    2d 2000 evals  ", worst, 1e-2);

  worst = 0.0;
  for (int s = 0; s < repeats; ++s) {
    BaselineConfig bc;
    bc.max_evals = 2000;
    bc.seed = mix_seed(seed, 40 + s);
    worst = std::max(worst,
                     de_optimize(sphere, Bounds::uniform(2, -5, 5), bc).best_f);
  }
  line("de    2d 2000 evals  ", worst, 1e-3);

  worst = 0.0;
  for (int s = 0; s < repeats; ++s) {
    BaselineConfig bc;
    bc.max_evals = 5000;
    bc.seed = mix_seed(seed, 50 + s);
    worst = std::max(worst,
                     hs_optimize(sphere, Bounds::uniform(2, -5, 5), bc).best_f);
  }
  line("hs    2d 5000 evals  ", worst, 1e-2);
  return 0;
}

int bench_rastrigin(std::uint64_t seed, int repeats) {
  using namespace anpso;
  std::cout << "suite: rastrigin 10d, pso vs adaptive pso (paired seeds)\n";
  const Bounds box = Bounds::uniform(10, -5.12, 5.12);
  std::vector<double> plain, adaptive;
  int retunes = 0, changed = 0;
  for (int s = 0; s < repeats; ++s) {
    PSOConfig pc;
    pc.n_particles = 30;
    pc.max_iters = 100;
    pc.seed = mix_seed(seed, 60 + s);
    plain.push_back(pso_optimize(rastrigin, box, pc).best_f);
    MetaConfig meta;  // library defaults: period 10, 100 EA gens, 10 probes
    const AdaptiveResult ar = optimize_adaptive(rastrigin, box, pc, meta);
    adaptive.push_back(ar.best_f);
    for (const auto& rec : ar.meta_trace) {
      ++retunes;
      changed += rec.changed ? 1 : 0;
    }
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  };
  std::cout << "pso   median best: " << format_double(median(plain)) << "\n";
  std::cout << "anpso median best: " << format_double(median(adaptive)) << "\n";
  std::cout << "retunes that changed parameters: " << changed << "/" << retunes
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive neuro-fuzzy training and swarm-tuned FIS search"};
  app.require_subcommand(1);
  argv = app.ensure_utf8(argv);

  // run
  auto* run = app.add_subcommand("run", "Run a full comparison from a JSON config");
  std::string run_config, run_out;
  std::uint64_t run_seed = 0;
  run->add_option("--config", run_config, "JSON experiment config")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--out", run_out, "Output directory (beats ANPSO_OUT_DIR)");
  auto* run_seed_opt = run->add_option("--seed", run_seed, "Override config seed");

  // tune
  auto* tune = app.add_subcommand("tune", "Tune a FIS on a dataset with one method");
  std::string tune_method = "anpso", tune_dataset, tune_out;
  std::uint64_t tune_seed = 42;
  int tune_runs = 1, tune_particles = 20, tune_iters = 120;
  int tune_retune = 25, tune_ea_gens = 5, tune_probe = 2;
  tune->add_option("--method", tune_method, "anfis|anfis-bp|pso|anpso|ga|de|hs")
      ->required();
  tune->add_option("--dataset", tune_dataset,
                   "CSV with numeric fields, last column target (default: built-in synthetic)")
      ->check(CLI::ExistingFile);
  tune->add_option("--out", tune_out, "Output directory (beats ANPSO_OUT_DIR)");
  tune->add_option("--seed", tune_seed, "Experiment seed");
  tune->add_option("--runs", tune_runs, "Independent paired runs");
  tune->add_option("--particles", tune_particles, "Swarm / population size");
  tune->add_option("--iters", tune_iters, "Search iterations");
  tune->add_option("--retune-period", tune_retune, "Adaptive retune period");
  tune->add_option("--ea-gens", tune_ea_gens, "EA generations per retune");
  tune->add_option("--probe-iters", tune_probe, "Swarm steps per meta probe");

  // describe
  auto* describe = app.add_subcommand("describe", "Summarize a saved model JSON");
  std::string model_path;
  describe->add_option("--model", model_path, "model.json produced by run/tune")
      ->required()
      ->check(CLI::ExistingFile);

  // bench
  auto* bench = app.add_subcommand("bench", "Optimizer sanity benchmarks");
  std::string suite = "sphere";
  std::uint64_t bench_seed = 1;
  int bench_repeats = 10;
  bench->add_option("--suite", suite, "sphere|rastrigin")->required();
  bench->add_option("--seed", bench_seed, "Base seed");
  bench->add_option("--repeats", bench_repeats, "Seeds per optimizer")
      ->check(CLI::PositiveNumber);

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "Write a synthetic liver-panel CSV");
  std::string gen_out = "liver_synthetic.csv";
  std::uint64_t gen_seed = 1;
  int gen_n = 345;
  gen->add_option("--out", gen_out, "Output CSV path");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--n", gen_n, "Sample count")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run)
      return cmd_run(run_config, run_out, run_seed_opt->count() > 0, run_seed);
    if (*tune) {
      anpso::ExperimentConfig cfg;
      cfg.dataset_path = tune_dataset;
      cfg.methods = {tune_method};
      cfg.runs = tune_runs;
      cfg.seed = tune_seed;
      cfg.tuner.particles = tune_particles;
      cfg.tuner.iters = tune_iters;
      cfg.meta.retune_period = tune_retune;
      cfg.meta.ea_generations = tune_ea_gens;
      cfg.meta.probe_iters = tune_probe;
      return cmd_tune(cfg, tune_out);
    }
    if (*describe) return cmd_describe(model_path);
    if (*bench) {
      if (suite == "sphere") return bench_sphere(bench_seed, bench_repeats);
      if (suite == "rastrigin") return bench_rastrigin(bench_seed, bench_repeats);
      std::cerr << "unknown suite: " << suite << " (want sphere|rastrigin)\n";
      return 2;
    }
    if (*gen) {
      const anpso::Dataset ds = anpso::synthesize_liver_dataset(gen_seed, gen_n);
      spit(gen_out, anpso::to_csv(ds));
      std::cout << "wrote " << ds.n_samples() << " samples to " << gen_out << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
