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

// ijunlearn command-line harness.
//
//   ijunlearn bench --config run.cfg [--<key> value ...]
//   ijunlearn counterexample --n 10
//   ijunlearn capacity --n 1000000 --d 16 --epsilon 1 --delta 0.005
//   ijunlearn prox-check
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "ijunlearn/bench.h"
#include "ijunlearn/error.h"
#include "ijunlearn/pitfalls.h"
#include "ijunlearn/report.h"
#include "ijunlearn/unlearner.h"
#include "prox_check.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct GlobalFlags {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::trunc);
  if (!file) {
    throw ijunlearn::Error(ijunlearn::ErrorCode::kIoError, "cannot write " + path);
  }
  file << text;
}

int RunBenchCommand(const GlobalFlags& global, const std::string& config_path,
                    const std::map<std::string, std::string>& overrides) {
  using namespace ijunlearn;
  KvConfig kv = config_path.empty() ? KvConfig() : KvConfig::Load(config_path);
  for (const auto& [key, value] : overrides) kv.Set(key, value);
  if (global.seed) kv.Set("seeds", std::to_string(*global.seed));
  if (global.out) kv.Set("out", *global.out);
  const BenchConfig config = BenchConfigFromKv(kv);

  // Lines are flushed as they arrive so a failed run leaves a partial report.
  std::ofstream file(config.out, std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIoError, "cannot write " + config.out);
  BenchObserver observer;
  observer.on_header = [&](const BenchHeader& h) {
    file << HeaderLine(h) << '\n' << std::flush;
    std::printf("n_train=%lld n_test=%lld d=%lld lambda=%g base_acc=%.4f\n",
                static_cast<long long>(h.n_train), static_cast<long long>(h.n_test),
                static_cast<long long>(h.dim), h.selected_lambda, h.base_accuracy);
    std::printf("constants mu=%.4g L=%.4g C=%.4g M=%.4g (%s)\n", h.mu, h.L, h.C,
                h.M, h.constants_provenance.c_str());
  };
  observer.on_record = [&](const BenchRecord& r) {
    file << RecordLine(r) << '\n' << std::flush;
  };
  const BenchReport report = RunBench(config, observer);

  std::printf("%-4s %8s %14s %10s %12s\n", "mech", "deletes", "cum_runtime_s",
              "test_acc", "dist_to_rt");
  for (Mechanism m : config.mechanisms) {
    const std::string name = ToString(m);
    const auto runtime = report.MeanCurve(
        name, [](const BenchRecord& r) { return std::optional<double>(r.cum_runtime_s); });
    if (runtime.empty()) continue;
    const auto acc = report.MeanCurve(name, [](const BenchRecord& r) { return r.test_acc; });
    const auto dist = report.MeanCurve(name, [](const BenchRecord& r) { return r.dist_to_rt; });
    std::printf("%-4s %8lld %14.6f %10.4f ", name.c_str(),
                static_cast<long long>(runtime.back().first), runtime.back().second,
                acc.empty() ? 0.0 : acc.back().second);
    if (dist.empty()) {
      std::printf("%12s\n", "-");
    } else {
      std::printf("%12.4e\n", dist.back().second);
    }
  }
  std::printf("report: %s (%zu records)\n", config.out.c_str(), report.records.size());
  return kExitOk;
}

int RunCounterexampleCommand(const GlobalFlags& global, long long n,
                             double big_lambda, bool cross_check) {
  using namespace ijunlearn;
  const CounterexampleReport report =
      RunCounterexample(n, CounterexampleOptions{big_lambda, cross_check});
  const std::string line = CounterexampleJson(report);
  std::cout << line << '\n';
  if (global.out) WriteText(*global.out, line + "\n");
  return report.reproduced ? kExitOk : kExitNumerical;
}

int RunCapacityCommand(const GlobalFlags& global, long long n, long long d,
                       double epsilon, double delta, double gamma,
                       const ijunlearn::SmoothnessConstants& constants) {
  using namespace ijunlearn;
  const Index m = CapacityLowerBound(n, d, epsilon, delta, gamma, constants);
  std::cout << m << '\n';
  if (global.out) WriteText(*global.out, std::to_string(m) + "\n");
  return kExitOk;
}

int RunProxCheckCommand(const GlobalFlags& global, int trials) {
  using ijunlearn::tools::RunProxChecks;
  bool ok = true;
  std::string text;
  for (const auto& r : RunProxChecks(global.seed.value_or(0), trials)) {
    char line[256];
    std::snprintf(line, sizeof(line), "%s %s trials=%d worst=%.3e tol=%.0e\n",
                  r.passed ? "PASS" : "FAIL", r.name.c_str(), r.trials, r.worst,
                  r.tolerance);
    text += line;
    ok = ok && r.passed;
  }
  std::cout << text;
  if (global.out) WriteText(*global.out, text);
  return ok ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate unlearning benchmarks and calculators"};
  app.require_subcommand(1);
  GlobalFlags global;
  std::uint64_t seed = 0;
  std::string out;
  auto* seed_opt = app.add_option("--seed", seed, "Run seed")->check(CLI::NonNegativeNumber);
  auto* out_opt = app.add_option("--out", out, "Output path");

  auto* bench = app.add_subcommand("bench", "Benchmark IJ, TA and RT on a deletion stream");
  std::string config_path;
  bench->add_option("--config", config_path, "Key-value config file")->check(CLI::ExistingFile);
  std::map<std::string, std::string> overrides;
  for (const auto& key : ijunlearn::BenchKeys()) {
    bench->add_option_function<std::string>(
        "--" + key.name,
        [&overrides, name = key.name](const std::string& v) { overrides[name] = v; },
        key.help);
  }

  auto* counter = app.add_subcommand(
      "counterexample", "Leave-one-out CV selection flip under a single deletion");
  long long cx_n = 0;
  double big_lambda = 1e12;
  bool no_cross_check = false;
  counter->add_option("--n", cx_n, "Dataset size (>= 2)")->required();
  counter->add_option("--big-lambda", big_lambda, "Stand-in for an infinite lambda");
  counter->add_flag("--no-cross-check", no_cross_check,
                    "Skip the generic cross-validation selector");

  auto* capacity = app.add_subcommand("capacity", "Deletion-capacity lower bound");
  long long cap_n = 0;
  long long cap_d = 0;
  double epsilon = 1.0;
  double delta = 0.005;
  double gamma = 0.01;
  ijunlearn::SmoothnessConstants constants{1.0, 1.0, 1.0, 1.0,
                                           ijunlearn::ConstantsProvenance::kUserSupplied};
  capacity->add_option("--n", cap_n, "Training size")->required();
  capacity->add_option("--d", cap_d, "Dimension")->required();
  capacity->add_option("--epsilon", epsilon, "Privacy epsilon (<= 1)");
  capacity->add_option("--delta", delta, "Privacy delta (<= 0.005)");
  capacity->add_option("--gamma", gamma, "Excess-risk budget");
  capacity->add_option("--mu", constants.mu, "Strong convexity");
  capacity->add_option("--L", constants.L, "Gradient bound");
  capacity->add_option("--C", constants.C, "Hessian bound");
  capacity->add_option("--M", constants.M, "Hessian Lipschitz constant");

  auto* prox = app.add_subcommand("prox-check", "Check the prox solver against oracles");
  int trials = 50;
  prox->add_option("--trials", trials, "Random problems per check")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (*seed_opt) global.seed = seed;
  if (*out_opt) global.out = out;

  try {
    if (*bench) return RunBenchCommand(global, config_path, overrides);
    if (*counter) {
      return RunCounterexampleCommand(global, cx_n, big_lambda, !no_cross_check);
    }
    if (*capacity) {
      return RunCapacityCommand(global, cap_n, cap_d, epsilon, delta, gamma, constants);
    }
    if (*prox) return RunProxCheckCommand(global, trials);
  } catch (const ijunlearn::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ijunlearn::IsNumericalFailure(e.code()) ? kExitNumerical : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}
