#include "anpso/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "anpso/format.hpp"
#include "anpso/genome.hpp"
#include "anpso/metrics.hpp"
#include "anpso/synth.hpp"

namespace anpso {

namespace {

using nlohmann::json;

TrainMode mode_from_string(const std::string& s) {
  if (s == "hybrid") return TrainMode::Hybrid;
  if (s == "backprop") return TrainMode::Backprop;
  throw std::runtime_error("config: unknown train mode '" + s + "'");
}

std::string mode_to_string(TrainMode m) {
  return m == TrainMode::Hybrid ? "hybrid" : "backprop";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << content;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

bool method_known(const std::string& name) {
  static const std::vector<std::string> known = {"anfis", "anfis-bp", "pso",
                                                 "anpso", "ga", "de", "hs"};
  return std::find(known.begin(), known.end(), name) != known.end();
}

ExperimentConfig config_from_json(const std::string& text) {
  const json j = json::parse(text);
  ExperimentConfig c;
  c.dataset_path = j.value("dataset", c.dataset_path);
  c.synthetic_seed = j.value("synthetic_seed", c.synthetic_seed);
  c.synthetic_n = j.value("synthetic_n", c.synthetic_n);
  c.methods = j.value("methods", c.methods);
  c.runs = j.value("runs", c.runs);
  c.seed = j.value("seed", c.seed);
  c.train_fraction = j.value("train_fraction", c.train_fraction);
  c.out_dir = j.value("out_dir", c.out_dir);
  if (j.contains("anfis")) {
    const json& a = j.at("anfis");
    c.anfis.premise = a.value("premise", c.anfis.premise);
    c.anfis.grid_mfs = a.value("grid_mfs", c.anfis.grid_mfs);
    c.anfis.grid_sigma = a.value("grid_sigma", c.anfis.grid_sigma);
    c.anfis.rules = a.value("rules", c.anfis.rules);
    c.anfis.sigma = a.value("sigma", c.anfis.sigma);
    c.anfis.epochs = a.value("epochs", c.anfis.epochs);
    c.anfis.learning_rate = a.value("learning_rate", c.anfis.learning_rate);
    c.anfis.ridge_lambda = a.value("ridge_lambda", c.anfis.ridge_lambda);
    if (a.contains("mode"))
      c.anfis.mode = mode_from_string(a.at("mode").get<std::string>());
  }
  if (j.contains("tuner")) {
    const json& t = j.at("tuner");
    c.tuner.particles = t.value("particles", c.tuner.particles);
    c.tuner.iters = t.value("iters", c.tuner.iters);
    c.tuner.w = t.value("w", c.tuner.w);
    c.tuner.c1 = t.value("c1", c.tuner.c1);
    c.tuner.c2 = t.value("c2", c.tuner.c2);
    c.tuner.val_fraction = t.value("val_fraction", c.tuner.val_fraction);
    c.tuner.fit_epochs = t.value("fit_epochs", c.tuner.fit_epochs);
    c.tuner.fit_learning_rate =
        t.value("fit_learning_rate", c.tuner.fit_learning_rate);
    c.tuner.final_epochs = t.value("final_epochs", c.tuner.final_epochs);
    c.tuner.max_evals = t.value("max_evals", c.tuner.max_evals);
  }
  if (j.contains("meta")) {
    const json& m = j.at("meta");
    c.meta.retune_period = m.value("retune_period", c.meta.retune_period);
    c.meta.ea_generations = m.value("ea_generations", c.meta.ea_generations);
    c.meta.probe_iters = m.value("probe_iters", c.meta.probe_iters);
    c.meta.budget_factor = m.value("budget_factor", c.meta.budget_factor);
    c.meta.sigma0 = m.value("sigma0", c.meta.sigma0);
    c.meta.w_lo = m.value("w_lo", c.meta.w_lo);
    c.meta.w_hi = m.value("w_hi", c.meta.w_hi);
    c.meta.c_lo = m.value("c_lo", c.meta.c_lo);
    c.meta.c_hi = m.value("c_hi", c.meta.c_hi);
    if (m.contains("variant"))
      c.meta.variant = m.at("variant").get<std::string>() == "v2"
                           ? EAVariant::V2
                           : EAVariant::V1;
  }
  for (const auto& m : c.methods)
    if (!method_known(m)) throw std::runtime_error("config: unknown method '" + m + "'");
  if (c.runs < 1) throw std::runtime_error("config: runs must be >= 1");
  if (c.anfis.premise != "grid" && c.anfis.premise != "kmeans")
    throw std::runtime_error("config: premise must be 'grid' or 'kmeans'");
  return c;
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["dataset"] = c.dataset_path;
  j["synthetic_seed"] = c.synthetic_seed;
  j["synthetic_n"] = c.synthetic_n;
  j["methods"] = c.methods;
  j["runs"] = c.runs;
  j["seed"] = c.seed;
  j["train_fraction"] = c.train_fraction;
  j["out_dir"] = c.out_dir;
  j["anfis"] = {{"premise", c.anfis.premise},
                {"grid_mfs", c.anfis.grid_mfs},
                {"grid_sigma", c.anfis.grid_sigma},
                {"rules", c.anfis.rules},
                {"sigma", c.anfis.sigma},
                {"epochs", c.anfis.epochs},
                {"learning_rate", c.anfis.learning_rate},
                {"ridge_lambda", c.anfis.ridge_lambda},
                {"mode", mode_to_string(c.anfis.mode)}};
  j["tuner"] = {{"particles", c.tuner.particles},
                {"iters", c.tuner.iters},
                {"w", c.tuner.w},
                {"c1", c.tuner.c1},
                {"c2", c.tuner.c2},
                {"val_fraction", c.tuner.val_fraction},
                {"fit_epochs", c.tuner.fit_epochs},
                {"fit_learning_rate", c.tuner.fit_learning_rate},
                {"final_epochs", c.tuner.final_epochs},
                {"max_evals", c.tuner.max_evals}};
  j["meta"] = {{"retune_period", c.meta.retune_period},
               {"ea_generations", c.meta.ea_generations},
               {"probe_iters", c.meta.probe_iters},
               {"budget_factor", c.meta.budget_factor},
               {"sigma0", c.meta.sigma0},
               {"w_lo", c.meta.w_lo},
               {"w_hi", c.meta.w_hi},
               {"c_lo", c.meta.c_lo},
               {"c_hi", c.meta.c_hi},
               {"variant", c.meta.variant == EAVariant::V2 ? "v2" : "v1"}};
  return j.dump(2);
}

Dataset load_experiment_dataset(const ExperimentConfig& cfg) {
  if (cfg.dataset_path.empty())
    return synthesize_liver_dataset(cfg.synthetic_seed, cfg.synthetic_n);
  const std::string raw = read_file(cfg.dataset_path);
  // The liver-panel format is exactly 7 fields; anything else goes through
  // the generic last-column-target parser.
  const auto eol = raw.find('\n');
  const std::string first = raw.substr(0, eol);
  const auto commas = std::count(first.begin(), first.end(), ',');
  if (commas == 6) return parse_bupa(raw);
  return parse_csv_last_target(raw);
}

namespace {

struct Scored {
  double train_rmse, test_rmse, train_r, test_r;
};

Scored score_model(const FISModel& m, const Dataset& train, const Dataset& test) {
  Scored s;
  const std::vector<double> pt = predict(m, train);
  const std::vector<double> pe = predict(m, test);
  s.train_rmse = rmse(pt, train.targets_vec());
  s.test_rmse = rmse(pe, test.targets_vec());
  s.train_r = r_value(pt, train.targets_vec());
  s.test_r = r_value(pe, test.targets_vec());
  return s;
}

}  // namespace

RunOutcome run_method(const std::string& method, int run,
                      const ExperimentConfig& cfg, const Dataset& train,
                      const Dataset& test, const Dataset& subtrain,
                      const Dataset& val, std::uint64_t search_seed) {
  if (!method_known(method))
    throw std::invalid_argument("unknown method: " + method);
  RunOutcome out;
  out.method = method;
  out.run = run;

  if (method == "anfis" || method == "anfis-bp") {
    FISModel m =
        cfg.anfis.premise == "kmeans"
            ? default_model_from_data(train, cfg.anfis.rules, cfg.anfis.sigma)
            : grid_model(train.n_features(), cfg.anfis.grid_mfs,
                         cfg.anfis.grid_sigma);
    TrainConfig tc;
    tc.mode = method == "anfis-bp" ? TrainMode::Backprop : cfg.anfis.mode;
    tc.epochs = cfg.anfis.epochs;
    tc.learning_rate = cfg.anfis.learning_rate;
    tc.ridge_lambda = cfg.anfis.ridge_lambda;
    const TrainResult tr = train_anfis(m, train, nullptr, tc);
    out.model = tr.model;
    out.trace_csv = tr.trace.to_csv();
    const Scored s = score_model(out.model, train, test);
    out.train_rmse = s.train_rmse;
    out.test_rmse = s.test_rmse;
    out.train_r = s.train_r;
    out.test_r = s.test_r;
    return out;
  }

  // Structure search over the genome box.
  const int L = genome_length(train.n_features());
  const Bounds box = Bounds::uniform(L, 0.0, 1.0);
  TrainConfig fit_cfg;
  fit_cfg.mode = TrainMode::Hybrid;
  fit_cfg.epochs = cfg.tuner.fit_epochs;
  fit_cfg.learning_rate = cfg.tuner.fit_learning_rate;
  fit_cfg.ridge_lambda = cfg.anfis.ridge_lambda;
  const Objective obj = [&](const Eigen::VectorXd& g) {
    return fitness(g, subtrain, val, fit_cfg).validation_rmse;
  };

  Eigen::VectorXd best;
  if (method == "pso" || method == "anpso") {
    PSOConfig pc;
    pc.n_particles = cfg.tuner.particles;
    pc.max_iters = cfg.tuner.iters;
    pc.w = cfg.tuner.w;
    pc.c1 = cfg.tuner.c1;
    pc.c2 = cfg.tuner.c2;
    pc.seed = search_seed;
    if (method == "pso") {
      const OptResult r = pso_optimize(obj, box, pc);
      best = r.best_x;
      out.evals = r.evals;
      out.trace_csv = pso_trace_csv(r.trace);
    } else {
      const AdaptiveResult r = optimize_adaptive(obj, box, pc, cfg.meta);
      best = r.best_x;
      out.evals = r.evals;
      out.meta_evals = r.meta_evals;
      out.trace_csv = pso_trace_csv(r.trace);
      out.meta_trace_csv = meta_trace_csv(r.meta_trace);
    }
  } else {
    BaselineConfig bc;
    bc.population = cfg.tuner.particles;
    bc.max_evals = cfg.tuner.max_evals > 0
                       ? cfg.tuner.max_evals
                       : static_cast<long long>(cfg.tuner.particles) *
                             (cfg.tuner.iters + 1);
    bc.seed = search_seed;
    const BaselineResult r = method == "ga"   ? ga_optimize(obj, box, bc)
                             : method == "de" ? de_optimize(obj, box, bc)
                                              : hs_optimize(obj, box, bc);
    best = r.best_x;
    out.evals = r.evals;
    out.trace_csv = baseline_trace_csv(r.trace);
  }

  // Retrain the winning structure on the full training split.
  TrainConfig final_cfg;
  final_cfg.mode = TrainMode::Hybrid;
  final_cfg.epochs = cfg.tuner.final_epochs;
  final_cfg.learning_rate = cfg.tuner.fit_learning_rate;
  final_cfg.ridge_lambda = cfg.anfis.ridge_lambda;
  const FISModel decoded = decode(best, train.n_features());
  const TrainResult tr = train_anfis(decoded, train, nullptr, final_cfg);
  out.model = tr.model;
  const Scored s = score_model(out.model, train, test);
  out.train_rmse = s.train_rmse;
  out.test_rmse = s.test_rmse;
  out.train_r = s.train_r;
  out.test_r = s.test_r;
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const Dataset& raw) {
  const Dataset norm = normalize(raw);
  ExperimentResult res;
  for (const auto& method : cfg.methods) {
    MethodStats ms;
    ms.method = method;
    ms.runs = cfg.runs;
    std::vector<double> tr_rmse, te_rmse, tr_r, te_r, ev, mev;
    for (int r = 1; r <= cfg.runs; ++r) {
      const std::uint64_t split_seed = mix_seed(cfg.seed, 200 + r);
      const std::uint64_t subsplit_seed = mix_seed(cfg.seed, 400 + r);
      const std::uint64_t search_seed = mix_seed(cfg.seed, 300 + r);
      const auto [train, test] = split(norm, {cfg.train_fraction, split_seed});
      const auto [subtrain, val] =
          split(train, {1.0 - cfg.tuner.val_fraction, subsplit_seed});
      RunOutcome out =
          run_method(method, r, cfg, train, test, subtrain, val, search_seed);
      tr_rmse.push_back(out.train_rmse);
      te_rmse.push_back(out.test_rmse);
      tr_r.push_back(out.train_r);
      te_r.push_back(out.test_r);
      ev.push_back(static_cast<double>(out.evals));
      mev.push_back(static_cast<double>(out.meta_evals));
      res.outcomes.push_back(std::move(out));
    }
    ms.train_rmse_avg = mean_of(tr_rmse);
    ms.train_rmse_sd = sd_of(tr_rmse);
    ms.test_rmse_avg = mean_of(te_rmse);
    ms.test_rmse_sd = sd_of(te_rmse);
    ms.train_r_avg = mean_of(tr_r);
    ms.test_r_avg = mean_of(te_r);
    ms.evals_avg = mean_of(ev);
    ms.meta_evals_avg = mean_of(mev);
    res.stats.push_back(std::move(ms));
  }
  return res;
}

std::string stats_csv(const std::vector<MethodStats>& stats) {
  std::string out =
      "method,runs,train_rmse_avg,train_rmse_sd,test_rmse_avg,test_rmse_sd,"
      "train_r_avg,test_r_avg,evals_avg,meta_evals_avg\n";
  for (const auto& s : stats) {
    out += s.method;
    out += ',' + std::to_string(s.runs);
    for (double v : {s.train_rmse_avg, s.train_rmse_sd, s.test_rmse_avg,
                     s.test_rmse_sd, s.train_r_avg, s.test_r_avg, s.evals_avg,
                     s.meta_evals_avg}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::string runs_csv(const std::vector<RunOutcome>& outcomes) {
  std::string out =
      "method,run,train_rmse,test_rmse,train_r,test_r,evals,meta_evals\n";
  for (const auto& o : outcomes) {
    out += o.method;
    out += ',' + std::to_string(o.run);
    for (double v : {o.train_rmse, o.test_rmse, o.train_r, o.test_r}) {
      out += ',';
      out += format_double(v);
    }
    out += ',' + std::to_string(o.evals);
    out += ',' + std::to_string(o.meta_evals);
    out += '\n';
  }
  return out;
}

std::string stats_table_text(const std::vector<MethodStats>& stats) {
  char buf[160];
  std::string out;
  std::snprintf(buf, sizeof(buf), "%-10s %5s %12s %12s %9s %9s\n", "method",
                "runs", "train_rmse", "test_rmse", "train_r", "test_r");
  out += buf;
  out += std::string(62, '-') + "\n";
  for (const auto& s : stats) {
    std::snprintf(buf, sizeof(buf), "%-10s %5d %12.4f %12.4f %9.4f %9.4f\n",
                  s.method.c_str(), s.runs, s.train_rmse_avg, s.test_rmse_avg,
                  s.train_r_avg, s.test_r_avg);
    out += buf;
  }
  return out;
}

void write_experiment(const ExperimentResult& res, const ExperimentConfig& cfg,
                      const std::string& out_dir) {
  namespace fs = std::filesystem;
  const fs::path root(out_dir);
  fs::create_directories(root);

  std::vector<std::string> files;
  write_file(root / "stats.csv", stats_csv(res.stats));
  files.push_back("stats.csv");
  write_file(root / "stats.txt", stats_table_text(res.stats));
  files.push_back("stats.txt");
  write_file(root / "runs.csv", runs_csv(res.outcomes));
  files.push_back("runs.csv");

  for (const auto& o : res.outcomes) {
    const fs::path dir =
        root / "runs" / o.method / ("run_" + std::to_string(o.run));
    fs::create_directories(dir);
    const std::string rel =
        "runs/" + o.method + "/run_" + std::to_string(o.run) + "/";
    write_file(dir / "trace.csv", o.trace_csv);
    files.push_back(rel + "trace.csv");
    write_file(dir / "model.json", model_to_json(o.model));
    files.push_back(rel + "model.json");
    if (!o.meta_trace_csv.empty()) {
      write_file(dir / "meta_trace.csv", o.meta_trace_csv);
      files.push_back(rel + "meta_trace.csv");
    }
  }

  std::sort(files.begin(), files.end());
  json manifest;
  manifest["config"] = json::parse(config_to_json(cfg));
  manifest["files"] = files;
  write_file(root / "manifest.json", manifest.dump(2));
}

}  // namespace anpso
