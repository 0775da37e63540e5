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

#ifndef IJUNLEARN_BENCH_H_
#define IJUNLEARN_BENCH_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ijunlearn/config.h"
#include "ijunlearn/dataset.h"
#include "ijunlearn/objectives.h"
#include "ijunlearn/stream.h"
#include "ijunlearn/unlearner.h"

namespace ijunlearn {

enum class Mechanism { kIJ, kTA, kRT };

std::string ToString(Mechanism m);
// "ij", "ta" or "rt" (case-insensitive); throws ConfigError otherwise.
Mechanism ParseMechanism(const std::string& name);

struct BenchConfig {
  // "synth" or a CSV path.
  std::string data = "synth";
  int label_column = -1;
  bool has_header = false;
  double test_fraction = 0.2;  // CSV only; the generator splits 80/20
  Index synth_n = 1000;
  Index synth_d = 10;
  double synth_separation = 4.0;
  std::uint64_t data_seed = 0;

  LossKind loss = LossKind::kLogistic;
  Regularizer reg = Regularizer::L2();
  std::vector<double> lambda_grid = {1e-3, 1e-4, 1e-5, 1e-6};
  double tol = 1e-10;

  std::vector<Mechanism> mechanisms = {Mechanism::kIJ, Mechanism::kTA,
                                       Mechanism::kRT};
  StreamKind stream = StreamKind::kUniformRandom;
  Index stream_length = 10;
  double p_positive = 0.5;
  std::vector<Index> stream_ids;  // StreamKind::kExplicitList

  PrivacyBudget budget;
  NoiseMode noise = NoiseMode::kFormula;
  double noise_c = 0.01;  // NoiseMode::kFixed
  UpdateRule rule = UpdateRule::kStationary;
  CapacityPolicy capacity_policy = CapacityPolicy::kWarn;
  double capacity_gamma = 0.01;
  bool local_curvature = false;
  // Supplying all four skips estimation.
  std::optional<double> mu, L, C, M;

  std::vector<std::uint64_t> seeds = {0};
  Index eval_every = 1;  // test accuracy on every k-th deletion and the last
  Index ta_window = 1;   // TA removes pending requests in batches of this size
  std::string out = "bench_report.jsonl";

  // Throws ConfigError on inconsistent settings.
  void Validate() const;
};

// Config keys with one-line descriptions; the CLI mirrors each as a flag of
// the same name.
struct BenchKey {
  std::string name;
  std::string help;
};
const std::vector<BenchKey>& BenchKeys();

// Builds a config from key-value text (unknown keys are rejected).
BenchConfig BenchConfigFromKv(const KvConfig& kv);
// Canonical key-value echo of every setting, in BenchKeys() order.
std::vector<std::pair<std::string, std::string>> EchoConfig(const BenchConfig& config);

struct BenchRecord {
  std::string mechanism;
  std::uint64_t seed = 0;
  Index delete_index = 0;  // 1..m
  double cum_runtime_s = 0.0;
  std::optional<double> test_acc;    // empty on skipped evaluations
  std::optional<double> dist_to_rt;  // empty when RT is not benchmarked
  double noise_c = 0.0;

  bool operator==(const BenchRecord&) const = default;
};

struct BenchHeader {
  std::vector<std::pair<std::string, std::string>> config;
  Index n_train = 0;
  Index n_test = 0;
  Index dim = 0;
  std::vector<double> grid_accuracy;  // test accuracy per lambda_grid entry
  double selected_lambda = 0.0;
  double base_accuracy = 0.0;  // selected model, before any deletion
  double mu = 0.0, L = 0.0, C = 0.0, M = 0.0;
  std::string constants_provenance;
  std::optional<Index> capacity;  // empty outside the bound's regime
  std::string ta_noise_expression;
  std::string environment;

  bool operator==(const BenchHeader&) const = default;
};

struct BenchReport {
  BenchHeader header;
  std::vector<BenchRecord> records;

  // Mean over seeds of a field per delete index for one mechanism; indices
  // where no seed has a value are skipped. Pairs are (delete_index, mean).
  std::vector<std::pair<Index, double>> MeanCurve(
      const std::string& mechanism,
      const std::function<std::optional<double>(const BenchRecord&)>& field) const;

  bool operator==(const BenchReport&) const = default;
};

// Optional streaming hooks: the header is emitted once training and lambda
// selection finish, each record as soon as it is final.
struct BenchObserver {
  std::function<void(const BenchHeader&)> on_header;
  std::function<void(const BenchRecord&)> on_record;
};

// Loads or generates the data, trains one model per lambda, keeps the one
// with the best test accuracy (ties to the larger lambda), then replays a
// deletion stream per seed through every configured mechanism. RT runs first
// so the others can be measured against it. Only mechanism work is timed,
// with a steady clock; IJ's one-time setup is charged to its first record.
BenchReport RunBench(const BenchConfig& config, const BenchObserver& observer = {});

// The dataset RunBench works on: generated, or loaded and split by data_seed.
Dataset LoadBenchData(const BenchConfig& config);

}  // namespace ijunlearn

#endif  // IJUNLEARN_BENCH_H_
