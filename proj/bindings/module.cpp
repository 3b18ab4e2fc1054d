// Python bindings: the main operations of the library — data handling, the
// FIS/ANFIS engine, the optimizers, the structure genome, and the experiment
// driver. Models and configs cross the boundary as JSON strings where a
// faithful object mapping would add little.
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "anpso/anfis.hpp"
#include "anpso/anpso.hpp"
#include "anpso/baselines.hpp"
#include "anpso/bench.hpp"
#include "anpso/dataset.hpp"
#include "anpso/ea.hpp"
#include "anpso/experiment.hpp"
#include "anpso/fis.hpp"
#include "anpso/genome.hpp"
#include "anpso/metrics.hpp"
#include "anpso/pso.hpp"
#include "anpso/synth.hpp"

namespace py = pybind11;
using namespace anpso;

PYBIND11_MODULE(_core, m) {
  m.doc() = "ANFIS + adaptive PSO structure tuning core";
  m.attr("__version__") = "0.1.0";

  // ---- data ----
  py::class_<Dataset>(m, "Dataset")
      .def(py::init<>())
      .def_readwrite("features", &Dataset::features)
      .def_readwrite("targets", &Dataset::targets)
      .def_property_readonly("n_samples", &Dataset::n_samples)
      .def_property_readonly("n_features", &Dataset::n_features)
      .def_property_readonly("normalized", &Dataset::normalized)
      .def("row", &Dataset::row)
      .def("to_csv", [](const Dataset& d) { return to_csv(d); })
      .def("to_json", [](const Dataset& d) { return to_json(d); });

  m.def("parse_bupa", &parse_bupa, py::arg("text"));
  m.def("parse_csv_last_target", &parse_csv_last_target, py::arg("text"),
        py::arg("expected_fields") = -1);
  m.def("normalize", &normalize);
  m.def("denormalize", &denormalize);
  m.def(
      "split",
      [](const Dataset& ds, double fraction, std::uint64_t seed) {
        return split(ds, SplitSpec{fraction, seed});
      },
      py::arg("dataset"), py::arg("train_fraction") = 0.7, py::arg("seed") = 0);
  m.def("dataset_from_json", &dataset_from_json);
  m.def("synthesize_liver_dataset", &synthesize_liver_dataset, py::arg("seed"),
        py::arg("n") = 345);

  // ---- metrics ----
  m.def("mse", &mse);
  m.def("rmse", &rmse);
  m.def("r_value", [](const std::vector<double>& pred,
                      const std::vector<double>& target) {
    bool degenerate = false;
    const double r = r_value(pred, target, &degenerate);
    return py::make_tuple(r, degenerate);
  });

  // ---- FIS ----
  py::class_<FISModel>(m, "FISModel")
      .def(py::init<>())
      .def_property_readonly("n_rules", &FISModel::n_rules)
      .def_property_readonly("n_inputs", &FISModel::n_inputs)
      .def_readwrite("first_order", &FISModel::first_order)
      .def("validate", &FISModel::validate)
      .def("to_json", [](const FISModel& mm) { return model_to_json(mm); })
      .def("describe", [](const FISModel& mm) { return describe_model(mm); });
  m.def("model_from_json", &model_from_json);
  m.def(
      "infer",
      [](const FISModel& model, const std::vector<double>& x) {
        return infer(model, x);
      },
      py::arg("model"), py::arg("x"));
  m.def("infer_batch", &infer_batch);
  m.def("default_model", &default_model, py::arg("n_inputs"),
        py::arg("n_rules"), py::arg("sigma") = 0.35);
  m.def("default_model_from_data", &default_model_from_data, py::arg("train"),
        py::arg("n_rules"), py::arg("sigma_scale") = 1.0);
  m.def("grid_model", &grid_model, py::arg("n_inputs"),
        py::arg("mfs_per_input"), py::arg("sigma") = 0.35);

  // ---- ANFIS training ----
  py::enum_<TrainMode>(m, "TrainMode")
      .value("Hybrid", TrainMode::Hybrid)
      .value("Backprop", TrainMode::Backprop);
  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("mode", &TrainConfig::mode)
      .def_readwrite("epochs", &TrainConfig::epochs)
      .def_readwrite("learning_rate", &TrainConfig::learning_rate)
      .def_readwrite("clip_norm", &TrainConfig::clip_norm)
      .def_readwrite("ridge_lambda", &TrainConfig::ridge_lambda);
  py::class_<TrainResult>(m, "TrainResult")
      .def_readonly("model", &TrainResult::model)
      .def_readonly("diverged", &TrainResult::diverged)
      .def_readonly("final_train_rmse", &TrainResult::final_train_rmse)
      .def_readonly("final_val_rmse", &TrainResult::final_val_rmse)
      .def_property_readonly(
          "trace_csv", [](const TrainResult& t) { return t.trace.to_csv(); });
  m.def(
      "train_anfis",
      [](const FISModel& model, const Dataset& train, const Dataset* validation,
         const TrainConfig& cfg) {
        return train_anfis(model, train, validation, cfg);
      },
      py::arg("model"), py::arg("train"), py::arg("validation") = nullptr,
      py::arg("config") = TrainConfig{});
  py::class_<LSEResult>(m, "LSEResult")
      .def_readonly("theta", &LSEResult::theta)
      .def_readonly("residual_rmse", &LSEResult::residual_rmse)
      .def_readonly("rank_deficient", &LSEResult::rank_deficient);
  m.def("lse_consequents", &lse_consequents, py::arg("model"), py::arg("data"),
        py::arg("ridge_lambda") = 0.0,
        "Solves the consequent least squares in place; 0 = exact solve.");
  m.def("evaluate_rmse", &evaluate_rmse);

  // ---- optimizers ----
  py::class_<Bounds>(m, "Bounds")
      .def(py::init<>())
      .def_readwrite("lo", &Bounds::lo)
      .def_readwrite("hi", &Bounds::hi)
      .def_static("uniform", &Bounds::uniform);
  py::class_<PSOConfig>(m, "PSOConfig")
      .def(py::init<>())
      .def_readwrite("n_particles", &PSOConfig::n_particles)
      .def_readwrite("max_iters", &PSOConfig::max_iters)
      .def_readwrite("w", &PSOConfig::w)
      .def_readwrite("c1", &PSOConfig::c1)
      .def_readwrite("c2", &PSOConfig::c2)
      .def_readwrite("v_max_frac", &PSOConfig::v_max_frac)
      .def_readwrite("seed", &PSOConfig::seed);
  py::class_<OptResult>(m, "OptResult")
      .def_readonly("best_x", &OptResult::best_x)
      .def_readonly("best_f", &OptResult::best_f)
      .def_readonly("evals", &OptResult::evals)
      .def_readonly("nan_evals", &OptResult::nan_evals)
      .def_property_readonly(
          "trace_csv", [](const OptResult& r) { return pso_trace_csv(r.trace); });
  m.def("pso_optimize", &pso_optimize, py::arg("objective"), py::arg("bounds"),
        py::arg("config") = PSOConfig{});

  py::enum_<EAVariant>(m, "EAVariant")
      .value("V1", EAVariant::V1)
      .value("V2", EAVariant::V2);
  py::class_<EAConfig>(m, "EAConfig")
      .def(py::init<>())
      .def_readwrite("variant", &EAConfig::variant)
      .def_readwrite("generations", &EAConfig::generations)
      .def_readwrite("sigma0", &EAConfig::sigma0)
      .def_readwrite("mutation_prob", &EAConfig::mutation_prob)
      .def_readwrite("sigma_min", &EAConfig::sigma_min)
      .def_readwrite("seed", &EAConfig::seed);
  py::class_<EAResult>(m, "EAResult")
      .def_readonly("best_x", &EAResult::best_x)
      .def_readonly("best_f", &EAResult::best_f)
      .def_readonly("initial_f", &EAResult::initial_f)
      .def_readonly("sigma_final", &EAResult::sigma_final)
      .def_readonly("evals", &EAResult::evals)
      .def_readonly("success_count", &EAResult::success_count)
      .def_property_readonly(
          "trace_csv", [](const EAResult& r) { return ea_trace_csv(r.trace); });
  m.def("ea_optimize", &ea_optimize, py::arg("objective"), py::arg("bounds"),
        py::arg("config") = EAConfig{}, py::arg("x0") = Eigen::VectorXd());

  py::class_<MetaConfig>(m, "MetaConfig")
      .def(py::init<>())
      .def_readwrite("retune_period", &MetaConfig::retune_period)
      .def_readwrite("ea_generations", &MetaConfig::ea_generations)
      .def_readwrite("variant", &MetaConfig::variant)
      .def_readwrite("probe_iters", &MetaConfig::probe_iters)
      .def_readwrite("budget_factor", &MetaConfig::budget_factor)
      .def_readwrite("sigma0", &MetaConfig::sigma0);
  py::class_<AdaptiveResult>(m, "AdaptiveResult")
      .def_readonly("best_x", &AdaptiveResult::best_x)
      .def_readonly("best_f", &AdaptiveResult::best_f)
      .def_readonly("evals", &AdaptiveResult::evals)
      .def_readonly("meta_evals", &AdaptiveResult::meta_evals)
      .def_readonly("w_final", &AdaptiveResult::w_final)
      .def_readonly("c1_final", &AdaptiveResult::c1_final)
      .def_readonly("c2_final", &AdaptiveResult::c2_final)
      .def_property_readonly(
          "trace_csv",
          [](const AdaptiveResult& r) { return pso_trace_csv(r.trace); })
      .def_property_readonly("meta_trace_csv", [](const AdaptiveResult& r) {
        return meta_trace_csv(r.meta_trace);
      });
  m.def("optimize_adaptive", &optimize_adaptive, py::arg("objective"),
        py::arg("bounds"), py::arg("config") = PSOConfig{},
        py::arg("meta") = MetaConfig{});

  py::class_<BaselineConfig>(m, "BaselineConfig")
      .def(py::init<>())
      .def_readwrite("population", &BaselineConfig::population)
      .def_readwrite("max_evals", &BaselineConfig::max_evals)
      .def_readwrite("seed", &BaselineConfig::seed);
  py::class_<BaselineResult>(m, "BaselineResult")
      .def_readonly("best_x", &BaselineResult::best_x)
      .def_readonly("best_f", &BaselineResult::best_f)
      .def_readonly("evals", &BaselineResult::evals);
  m.def("ga_optimize", &ga_optimize);
  m.def("de_optimize", &de_optimize);
  m.def("hs_optimize", &hs_optimize);

  // ---- structure genome ----
  m.def("genome_length", &genome_length);
  m.def("decode", &decode, py::arg("genome"), py::arg("n_inputs"));
  py::class_<FitnessReport>(m, "FitnessReport")
      .def_readonly("train_rmse", &FitnessReport::train_rmse)
      .def_readonly("validation_rmse", &FitnessReport::validation_rmse)
      .def_readonly("epochs_used", &FitnessReport::epochs_used)
      .def_readonly("diverged", &FitnessReport::diverged)
      .def_readonly("model_summary", &FitnessReport::model_summary);
  m.def("fitness", &fitness, py::arg("genome"), py::arg("train"),
        py::arg("validation"), py::arg("config") = TrainConfig{});

  // ---- benchmark functions ----
  m.def("sphere", &sphere);
  m.def("rastrigin", &rastrigin);

  // ---- experiment driver ----
  m.def("run_experiment_json", [](const std::string& config_text) {
    const ExperimentConfig cfg = config_from_json(config_text);
    const Dataset raw = load_experiment_dataset(cfg);
    const ExperimentResult res = run_experiment(cfg, raw);
    return py::make_tuple(stats_csv(res.stats), runs_csv(res.outcomes),
                          stats_table_text(res.stats));
  });
  m.def("write_experiment_json",
        [](const std::string& config_text, const std::string& out_dir) {
          ExperimentConfig cfg = config_from_json(config_text);
          const Dataset raw = load_experiment_dataset(cfg);
          const ExperimentResult res = run_experiment(cfg, raw);
          write_experiment(res, cfg, out_dir);
        });
}
