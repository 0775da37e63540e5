// Copyright 2026 The ijunlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "ijunlearn/bench.h"
#include "ijunlearn/config.h"
#include "ijunlearn/dataset.h"
#include "ijunlearn/error.h"
#include "ijunlearn/objectives.h"
#include "ijunlearn/pitfalls.h"
#include "ijunlearn/prox.h"
#include "ijunlearn/report.h"
#include "ijunlearn/stream.h"
#include "ijunlearn/trainer.h"
#include "ijunlearn/unlearner.h"

namespace py = pybind11;
using namespace ijunlearn;

namespace {

ObjectiveSpec MakeSpec(const std::string& loss, const std::string& reg, double lambda,
                       std::optional<SmoothnessConstants> constants) {
  ObjectiveSpec spec;
  spec.loss = ParseLossKind(loss);
  spec.reg = ParseRegularizer(reg);
  spec.lambda = lambda;
  spec.constants = constants;
  spec.Validate();
  return spec;
}

Branch ParseBranch(const std::string& name) {
  if (name == "smooth") return Branch::kSmooth;
  if (name == "nonsmooth") return Branch::kNonSmooth;
  throw Error(ErrorCode::kInvalidArgument, "branch must be smooth or nonsmooth");
}

UpdateRule ParseRule(const std::string& name) {
  if (name == "stationary") return UpdateRule::kStationary;
  if (name == "as_printed") return UpdateRule::kAsPrinted;
  throw Error(ErrorCode::kInvalidArgument, "rule must be stationary or as_printed");
}

// Noise: None means formula, a float means that fixed scale, 0 disables.
void ApplyNoise(const std::optional<double>& fixed, NoiseMode& mode, double& scale) {
  mode = fixed ? NoiseMode::kFixed : NoiseMode::kFormula;
  scale = fixed.value_or(0.0);
}

}  // namespace

PYBIND11_MODULE(_ijunlearn, m) {
  m.doc() = "Approximate unlearning for regularized convex ERM";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      // args = (message, code name)
      PyErr_SetObject(error.ptr(),
                      py::make_tuple(e.what(), std::string(ToString(e.code()))).ptr());
    }
  });

  py::class_<Dataset>(m, "Dataset")
      .def(py::init<Matrix, Vector, std::vector<Index>, std::vector<Index>>(),
           py::arg("features"), py::arg("targets"),
           py::arg("train_ids") = std::vector<Index>{},
           py::arg("test_ids") = std::vector<Index>{})
      .def_property_readonly("size", &Dataset::size)
      .def_property_readonly("dim", &Dataset::dim)
      .def_property_readonly("features", &Dataset::features)
      .def_property_readonly("targets", &Dataset::targets)
      .def_property_readonly("train_ids", [](const Dataset& d) {
        return std::vector<Index>(d.train_ids().begin(), d.train_ids().end());
      })
      .def_property_readonly("test_ids", [](const Dataset& d) {
        return std::vector<Index>(d.test_ids().begin(), d.test_ids().end());
      })
      .def("with_random_split", &Dataset::WithRandomSplit, py::arg("test_fraction"),
           py::arg("seed"));

  m.def("synth_gaussian_blobs", &SynthGaussianBlobs, py::arg("n"), py::arg("d"),
        py::arg("separation"), py::arg("seed"));
  m.def("load_csv", &LoadCsv, py::arg("path"), py::arg("label_column") = -1,
        py::arg("has_header") = false);
  m.def("parse_csv", &ParseCsv, py::arg("text"), py::arg("label_column") = -1,
        py::arg("has_header") = false, py::arg("source") = "<memory>");
  m.def("accuracy",
        [](const Dataset& data, const std::vector<Index>& ids, const Vector& theta) {
          return Accuracy(data, ids, theta);
        },
        py::arg("data"), py::arg("ids"), py::arg("theta"));

  py::class_<SmoothnessConstants>(m, "SmoothnessConstants")
      .def(py::init([](double mu, double L, double C, double M) {
             return SmoothnessConstants{mu, L, C, M, ConstantsProvenance::kUserSupplied};
           }),
           py::arg("mu"), py::arg("L"), py::arg("C"), py::arg("M"))
      .def_readonly("mu", &SmoothnessConstants::mu)
      .def_readonly("L", &SmoothnessConstants::L)
      .def_readonly("C", &SmoothnessConstants::C)
      .def_readonly("M", &SmoothnessConstants::M)
      .def_property_readonly("estimated", [](const SmoothnessConstants& k) {
        return k.provenance == ConstantsProvenance::kEstimated;
      });

  py::class_<ModelState>(m, "ModelState")
      .def_readonly("theta", &ModelState::theta)
      .def_readonly("lam", &ModelState::lambda)
      .def_readonly("n", &ModelState::n)
      .def_readonly("optimality_residual", &ModelState::optimality_residual)
      .def_readonly("iterations", &ModelState::iterations);

  m.def("train",
        [](const Dataset& data, const std::string& loss, const std::string& reg,
           double lam, double tol, std::optional<SmoothnessConstants> constants) {
          return Train(data, MakeSpec(loss, reg, lam, constants), TrainOptions{.tol = tol});
        },
        py::arg("data"), py::arg("loss") = "logistic", py::arg("reg") = "l2",
        py::arg("lam") = 1e-3, py::arg("tol") = 1e-10, py::arg("constants") = py::none());
  m.def("train_leave_out",
        [](const Dataset& data, const ModelState& model, const std::vector<Index>& ids,
           double tol) {
          return TrainLeaveOut(data, model.spec, ids, TrainOptions{.tol = tol});
        },
        py::arg("data"), py::arg("model"), py::arg("ids"), py::arg("tol") = 1e-10);
  m.def("estimate_constants",
        [](const Dataset& data, const ModelState& model, bool local_curvature) {
          return EstimateConstants(data, data.train_ids(), model.spec, model.theta,
                                   EstimateOptions{local_curvature});
        },
        py::arg("data"), py::arg("model"), py::arg("local_curvature") = false);

  py::class_<PrivacyBudget>(m, "PrivacyBudget")
      .def(py::init([](double epsilon, double delta) {
             PrivacyBudget b{epsilon, delta};
             b.Validate();
             return b;
           }),
           py::arg("epsilon") = 1.0, py::arg("delta") = 1e-5)
      .def_readonly("epsilon", &PrivacyBudget::epsilon)
      .def_readonly("delta", &PrivacyBudget::delta)
      .def("gaussian_factor", &PrivacyBudget::GaussianFactor);

  py::class_<RemovedModel>(m, "RemovedModel")
      .def_readonly("noiseless", &RemovedModel::noiseless)
      .def_readonly("published", &RemovedModel::published)
      .def_readonly("noise_scale", &RemovedModel::noise_scale)
      .def_readonly("deleted_count", &RemovedModel::deleted_count)
      .def_readonly("capacity_warning", &RemovedModel::capacity_warning);

  py::class_<Unlearner>(m, "Unlearner")
      .def(py::init([](const Dataset& data, const ModelState& model,
                       const PrivacyBudget& budget, std::uint64_t seed,
                       const std::string& branch, std::optional<double> noise,
                       const std::string& rule) {
             UnlearnerOptions options;
             options.rule = ParseRule(rule);
             ApplyNoise(noise, options.noise, options.fixed_noise_scale);
             return Unlearner::Init(data, model, budget, seed, ParseBranch(branch), options);
           }),
           py::arg("data"), py::arg("model"), py::arg("budget") = PrivacyBudget{},
           py::arg("seed") = 0, py::arg("branch") = "smooth",
           py::arg("noise") = py::none(), py::arg("rule") = "stationary")
      .def("delete_one", &Unlearner::DeleteOne, py::arg("id"))
      .def("batch_stream_gap",
           [](const Unlearner& u) {
             const BatchStreamGap gap = u.CheckAgainstBatch();
             return py::make_tuple(gap.accumulator_gap, gap.output_gap);
           })
      .def_property_readonly("n", &Unlearner::n)
      .def_property_readonly("deleted_ids", &Unlearner::deleted_ids)
      .def_property_readonly("reference", &Unlearner::reference)
      .def_property_readonly("noiseless", &Unlearner::noiseless)
      .def_property_readonly("constants", &Unlearner::constants);

  m.def("ta_batch_remove",
        [](const Dataset& data, const ModelState& model, const std::vector<Index>& ids,
           const PrivacyBudget& budget, std::uint64_t seed, const std::string& branch,
           std::optional<double> noise, const std::string& rule) {
          TaOptions options;
          options.rule = ParseRule(rule);
          ApplyNoise(noise, options.noise, options.fixed_noise_scale);
          return TaBatchRemove(data, model, ids, budget, seed, ParseBranch(branch), options);
        },
        py::arg("data"), py::arg("model"), py::arg("ids"),
        py::arg("budget") = PrivacyBudget{}, py::arg("seed") = 0,
        py::arg("branch") = "smooth", py::arg("noise") = py::none(),
        py::arg("rule") = "stationary");

  m.def("noise_scale",
        [](const std::string& branch, Index m_count, Index n,
           const SmoothnessConstants& k, const PrivacyBudget& b) {
          return NoiseScale(ParseBranch(branch), m_count, n, k, b);
        },
        py::arg("branch"), py::arg("m"), py::arg("n"), py::arg("constants"),
        py::arg("budget"));
  m.def("ta_noise_scale", &TaNoiseScale, py::arg("m"), py::arg("n"),
        py::arg("constants"), py::arg("budget"));
  m.def("capacity_lower_bound", &CapacityLowerBound, py::arg("n"), py::arg("d"),
        py::arg("epsilon"), py::arg("delta"), py::arg("gamma"), py::arg("constants"));
  m.def("generalization_bound", &GeneralizationBound, py::arg("m"), py::arg("n"),
        py::arg("d"), py::arg("epsilon"), py::arg("delta"), py::arg("constants"));

  m.def("prox_solve",
        [](const Matrix& h, const Vector& anchor, double lam, const std::string& reg,
           double tol) {
          return ProxSolve(ProxMetric(SymMatrix::FromLower(h)), anchor, lam,
                           ParseRegularizer(reg), ProxOptions{.tol = tol});
        },
        py::arg("h"), py::arg("anchor"), py::arg("lam"), py::arg("reg") = "l1",
        py::arg("tol") = 1e-10);

  m.def("make_stream",
        [](const Dataset& data, const std::string& kind, Index length,
           std::uint64_t seed, double p_positive, const std::vector<Index>& ids) {
          StreamPolicy policy;
          policy.kind = ParseStreamKind(kind);
          policy.length = length;
          policy.seed = seed;
          policy.p_positive = p_positive;
          policy.ids = ids;
          return MakeStream(policy, data);
        },
        py::arg("data"), py::arg("kind") = "uniform", py::arg("length") = 0,
        py::arg("seed") = 0, py::arg("p_positive") = 0.5,
        py::arg("ids") = std::vector<Index>{});

  m.def("run_counterexample_json",
        [](Index n, double big_lambda, bool cross_check) {
          return CounterexampleJson(
              RunCounterexample(n, CounterexampleOptions{big_lambda, cross_check}));
        },
        py::arg("n"), py::arg("big_lambda") = 1e12, py::arg("cross_check") = true);

  m.def("run_bench_lines",
        [](const std::map<std::string, std::string>& settings) {
          KvConfig kv;
          for (const auto& [key, value] : settings) kv.Set(key, value);
          const BenchReport report = RunBench(BenchConfigFromKv(kv));
          std::vector<std::string> lines{HeaderLine(report.header)};
          for (const auto& r : report.records) lines.push_back(RecordLine(r));
          return lines;
        },
        py::arg("settings"));
}
