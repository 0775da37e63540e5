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

#include "ijunlearn/bench.h"

#include <Eigen/Core>
#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <map>

#include "ijunlearn/error.h"
#include "ijunlearn/trainer.h"

namespace ijunlearn {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Shortest text that reads back to the same double.
std::string Render(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::to_string(v);
}

template <typename T, typename F>
std::string Join(const std::vector<T>& items, F render) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ",";
    out += render(items[i]);
  }
  return out;
}

std::string ToString(NoiseMode mode) {
  switch (mode) {
    case NoiseMode::kFormula: return "formula";
    case NoiseMode::kFixed: return "fixed";
    case NoiseMode::kDisabled: return "off";
  }
  return "unknown";
}

NoiseMode ParseNoiseMode(const std::string& name) {
  if (name == "formula") return NoiseMode::kFormula;
  if (name == "fixed") return NoiseMode::kFixed;
  if (name == "off") return NoiseMode::kDisabled;
  throw Error(ErrorCode::kConfigError, "noise must be formula, fixed or off");
}

std::string ToString(UpdateRule rule) {
  return rule == UpdateRule::kStationary ? "stationary" : "as_printed";
}

UpdateRule ParseUpdateRule(const std::string& name) {
  if (name == "stationary") return UpdateRule::kStationary;
  if (name == "as_printed") return UpdateRule::kAsPrinted;
  throw Error(ErrorCode::kConfigError,
              "update_rule must be stationary or as_printed");
}

std::string ToString(CapacityPolicy policy) {
  return policy == CapacityPolicy::kWarn ? "warn" : "error";
}

CapacityPolicy ParseCapacityPolicy(const std::string& name) {
  if (name == "warn") return CapacityPolicy::kWarn;
  if (name == "error") return CapacityPolicy::kError;
  throw Error(ErrorCode::kConfigError, "capacity_policy must be warn or error");
}

std::string Environment() {
  std::string env;
#if defined(__clang__)
  env += "compiler=clang " __clang_version__;
#elif defined(__GNUC__)
  env += "compiler=gcc " __VERSION__;
#else
  env += "compiler=unknown";
#endif
  env += "; eigen=" + std::to_string(EIGEN_WORLD_VERSION) + "." +
         std::to_string(EIGEN_MAJOR_VERSION) + "." +
         std::to_string(EIGEN_MINOR_VERSION);
  env += "; cplusplus=" + std::to_string(__cplusplus);
#ifdef NDEBUG
  env += "; asserts=off";
#else
  env += "; asserts=on";
#endif
  return env;
}

bool Evaluated(Index k, Index m, Index every) { return k % every == 0 || k == m; }

struct Context {
  const BenchConfig& config;
  const Dataset& data;
  const ModelState& model;
  Branch branch;
  const BenchObserver& observer;
  BenchReport& report;
};

void Emit(Context& ctx, BenchRecord record) {
  if (ctx.observer.on_record) ctx.observer.on_record(record);
  ctx.report.records.push_back(std::move(record));
}

BenchRecord MakeRecord(Context& ctx, Mechanism mechanism, std::uint64_t seed,
                       Index k, Index m, double cum, const Vector& theta,
                       const std::vector<Vector>& rt_path, double noise) {
  BenchRecord r;
  r.mechanism = ToString(mechanism);
  r.seed = seed;
  r.delete_index = k;
  r.cum_runtime_s = cum;
  if (Evaluated(k, m, ctx.config.eval_every)) {
    r.test_acc = Accuracy(ctx.data, ctx.data.test_ids(), theta);
  }
  if (!rt_path.empty()) {
    r.dist_to_rt = (theta - rt_path[static_cast<std::size_t>(k - 1)]).norm();
  }
  r.noise_c = noise;
  return r;
}

std::vector<Vector> RunRetrain(Context& ctx, std::uint64_t seed,
                               const std::vector<Index>& stream) {
  const auto m = static_cast<Index>(stream.size());
  const TrainOptions options{.tol = ctx.config.tol};
  std::vector<Vector> path;
  double cum = 0.0;
  for (Index k = 1; k <= m; ++k) {
    const std::span<const Index> removed(stream.data(), static_cast<std::size_t>(k));
    const auto start = Clock::now();
    const ModelState refit = TrainLeaveOut(ctx.data, ctx.model.spec, removed, options);
    cum += Seconds(start);
    path.push_back(refit.theta);
    Emit(ctx, MakeRecord(ctx, Mechanism::kRT, seed, k, m, cum, refit.theta, path, 0.0));
  }
  return path;
}

void RunJackknife(Context& ctx, std::uint64_t seed,
                  const std::vector<Index>& stream,
                  const std::vector<Vector>& rt_path) {
  const BenchConfig& c = ctx.config;
  UnlearnerOptions options;
  options.rule = c.rule;
  options.noise = c.noise;
  options.fixed_noise_scale = c.noise_c;
  options.capacity_policy = c.capacity_policy;
  options.capacity_gamma = c.capacity_gamma;
  options.estimate.local_curvature = c.local_curvature;

  const auto start = Clock::now();
  Unlearner unlearner = Unlearner::Init(ctx.data, ctx.model, c.budget,
                                        MixSeed(seed, 1), ctx.branch, options);
  double cum = Seconds(start);
  const auto m = static_cast<Index>(stream.size());
  for (Index k = 1; k <= m; ++k) {
    const auto step = Clock::now();
    const RemovedModel removed = unlearner.DeleteOne(stream[static_cast<std::size_t>(k - 1)]);
    cum += Seconds(step);
    Emit(ctx, MakeRecord(ctx, Mechanism::kIJ, seed, k, m, cum, removed.published,
                         rt_path, removed.noise_scale));
  }
}

void RunTaylor(Context& ctx, std::uint64_t seed,
               const std::vector<Index>& stream,
               const std::vector<Vector>& rt_path) {
  const BenchConfig& c = ctx.config;
  TaOptions options;
  options.rule = c.rule;
  options.noise = c.noise;
  options.fixed_noise_scale = c.noise_c;
  options.constants = ctx.model.spec.constants;
  options.estimate.local_curvature = c.local_curvature;

  Vector current = ctx.model.theta;
  double noise = 0.0;
  double cum = 0.0;
  const auto m = static_cast<Index>(stream.size());
  for (Index k = 1; k <= m; ++k) {
    // Requests wait until a full window has arrived (or the stream ends).
    if (k % c.ta_window == 0 || k == m) {
      const std::span<const Index> removed(stream.data(), static_cast<std::size_t>(k));
      const auto start = Clock::now();
      const RemovedModel r = TaBatchRemove(ctx.data, ctx.model, removed, c.budget,
                                           MixSeed(seed, 2), ctx.branch, options);
      cum += Seconds(start);
      current = r.published;
      noise = r.noise_scale;
    }
    Emit(ctx, MakeRecord(ctx, Mechanism::kTA, seed, k, m, cum, current, rt_path, noise));
  }
}

}  // namespace

std::string ToString(Mechanism m) {
  switch (m) {
    case Mechanism::kIJ: return "IJ";
    case Mechanism::kTA: return "TA";
    case Mechanism::kRT: return "RT";
  }
  return "unknown";
}

Mechanism ParseMechanism(const std::string& name) {
  const std::string n = Lower(name);
  if (n == "ij") return Mechanism::kIJ;
  if (n == "ta") return Mechanism::kTA;
  if (n == "rt") return Mechanism::kRT;
  throw Error(ErrorCode::kConfigError, "unknown mechanism '" + name + "'");
}

void BenchConfig::Validate() const {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kConfigError, msg);
  };
  if (mechanisms.empty()) fail("at least one mechanism is required");
  if (lambda_grid.empty()) fail("lambda_grid must not be empty");
  for (double lambda : lambda_grid) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) fail("lambda values must be finite and >= 0");
    if (!reg.smooth() && !(lambda > 0.0)) fail("non-smooth regularizers need lambda > 0");
  }
  if (!(tol > 0.0)) fail("tol must be positive");
  if (seeds.empty()) fail("seeds must not be empty");
  if (eval_every < 1) fail("eval_every must be >= 1");
  if (ta_window < 1) fail("ta_window must be >= 1");
  if (stream_length < 0) fail("stream_length must be >= 0");
  if (!(p_positive >= 0.0 && p_positive <= 1.0)) fail("p_positive must lie in [0, 1]");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) fail("test_fraction must lie in (0, 1)");
  if (!(noise_c >= 0.0)) fail("noise_c must be >= 0");
  if (!(capacity_gamma >= 0.0)) fail("capacity_gamma must be >= 0");
  if (!(budget.epsilon > 0.0) || !(budget.delta > 0.0 && budget.delta < 1.0)) {
    fail("epsilon must be > 0 and delta in (0, 1)");
  }
  const int given = mu.has_value() + L.has_value() + C.has_value() + M.has_value();
  if (given != 0 && given != 4) fail("give all of mu, L, C, M or none");
  if (data == "synth") {
    if (synth_n < 2 || synth_n % 2 != 0) fail("synth_n must be even and >= 2");
    if (synth_d < 1) fail("synth_d must be >= 1");
  }
}

const std::vector<BenchKey>& BenchKeys() {
  static const std::vector<BenchKey> keys = {
      {"data", "'synth' or a CSV path"},
      {"label_column", "CSV label column, negative counts from the end"},
      {"has_header", "CSV has a header row"},
      {"test_fraction", "CSV held-out fraction"},
      {"synth_n", "generated rows (even)"},
      {"synth_d", "generated features"},
      {"synth_separation", "distance between the generated class means"},
      {"data_seed", "seed for generation and the CSV split"},
      {"loss", "logistic or squared"},
      {"reg", "l2, l1, none or elasticnet:<mix>"},
      {"lambda_grid", "comma-separated regularization weights"},
      {"tol", "training tolerance"},
      {"mechanisms", "comma-separated subset of ij, ta, rt"},
      {"stream", "uniform, biased or explicit"},
      {"stream_length", "number of deletion requests"},
      {"p_positive", "probability of requesting a +1 row (biased streams)"},
      {"stream_ids", "comma-separated ids (explicit streams)"},
      {"epsilon", "privacy epsilon"},
      {"delta", "privacy delta"},
      {"noise", "formula, fixed or off"},
      {"noise_c", "noise standard deviation when noise = fixed"},
      {"update_rule", "stationary or as_printed"},
      {"capacity_policy", "warn or error once the capacity bound is reached"},
      {"capacity_gamma", "excess-risk budget of the capacity bound"},
      {"local_curvature", "use local loss curvature when estimating mu"},
      {"mu", "strong convexity constant (skips estimation with L, C, M)"},
      {"L", "gradient bound"},
      {"C", "Hessian bound"},
      {"M", "Hessian Lipschitz constant"},
      {"seeds", "comma-separated run seeds"},
      {"eval_every", "evaluate test accuracy every k-th deletion"},
      {"ta_window", "TA batch size"},
      {"out", "report path"},
  };
  return keys;
}

BenchConfig BenchConfigFromKv(const KvConfig& kv) {
  std::vector<std::string> names;
  for (const auto& key : BenchKeys()) names.push_back(key.name);
  kv.RequireKnownKeys(names);

  BenchConfig c;
  try {
    c.data = kv.GetString("data", c.data);
    c.label_column = static_cast<int>(kv.GetInt("label_column", c.label_column));
    c.has_header = kv.GetBool("has_header", c.has_header);
    c.test_fraction = kv.GetDouble("test_fraction", c.test_fraction);
    c.synth_n = kv.GetInt("synth_n", c.synth_n);
    c.synth_d = kv.GetInt("synth_d", c.synth_d);
    c.synth_separation = kv.GetDouble("synth_separation", c.synth_separation);
    const long long data_seed = kv.GetInt("data_seed", 0);
    if (data_seed < 0) throw Error(ErrorCode::kConfigError, "data_seed must be >= 0");
    c.data_seed = static_cast<std::uint64_t>(data_seed);
    c.loss = ParseLossKind(kv.GetString("loss", ToString(c.loss)));
    c.reg = ParseRegularizer(kv.GetString("reg", ToString(c.reg)));
    c.lambda_grid = kv.GetDoubleList("lambda_grid", c.lambda_grid);
    c.tol = kv.GetDouble("tol", c.tol);
    if (kv.Has("mechanisms")) {
      c.mechanisms.clear();
      for (const auto& name : kv.GetStringList("mechanisms", {})) {
        const Mechanism m = ParseMechanism(name);
        if (std::find(c.mechanisms.begin(), c.mechanisms.end(), m) == c.mechanisms.end()) {
          c.mechanisms.push_back(m);
        }
      }
    }
    c.stream = ParseStreamKind(kv.GetString("stream", ToString(c.stream)));
    c.stream_length = kv.GetInt("stream_length", c.stream_length);
    c.p_positive = kv.GetDouble("p_positive", c.p_positive);
    for (long long id : kv.GetIntList("stream_ids", {})) c.stream_ids.push_back(id);
    c.budget.epsilon = kv.GetDouble("epsilon", c.budget.epsilon);
    c.budget.delta = kv.GetDouble("delta", c.budget.delta);
    c.noise = ParseNoiseMode(kv.GetString("noise", ToString(c.noise)));
    c.noise_c = kv.GetDouble("noise_c", c.noise_c);
    c.rule = ParseUpdateRule(kv.GetString("update_rule", ToString(c.rule)));
    c.capacity_policy =
        ParseCapacityPolicy(kv.GetString("capacity_policy", ToString(c.capacity_policy)));
    c.capacity_gamma = kv.GetDouble("capacity_gamma", c.capacity_gamma);
    c.local_curvature = kv.GetBool("local_curvature", c.local_curvature);
    c.mu = kv.GetOptionalDouble("mu");
    c.L = kv.GetOptionalDouble("L");
    c.C = kv.GetOptionalDouble("C");
    c.M = kv.GetOptionalDouble("M");
    if (kv.Has("seeds")) {
      c.seeds.clear();
      for (long long s : kv.GetIntList("seeds", {})) {
        if (s < 0) throw Error(ErrorCode::kConfigError, "seeds must be >= 0");
        c.seeds.push_back(static_cast<std::uint64_t>(s));
      }
    }
    c.eval_every = kv.GetInt("eval_every", c.eval_every);
    c.ta_window = kv.GetInt("ta_window", c.ta_window);
    c.out = kv.GetString("out", c.out);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    throw Error(ErrorCode::kConfigError, e.what());
  }
  if (c.stream == StreamKind::kExplicitList) {
    c.stream_length = static_cast<Index>(c.stream_ids.size());
  }
  c.Validate();
  return c;
}

std::vector<std::pair<std::string, std::string>> EchoConfig(const BenchConfig& c) {
  auto opt = [](const std::optional<double>& v) { return v ? Render(*v) : std::string(); };
  const std::map<std::string, std::string> values = {
      {"data", c.data},
      {"label_column", std::to_string(c.label_column)},
      {"has_header", c.has_header ? "true" : "false"},
      {"test_fraction", Render(c.test_fraction)},
      {"synth_n", std::to_string(c.synth_n)},
      {"synth_d", std::to_string(c.synth_d)},
      {"synth_separation", Render(c.synth_separation)},
      {"data_seed", std::to_string(c.data_seed)},
      {"loss", ToString(c.loss)},
      {"reg", ToString(c.reg)},
      {"lambda_grid", Join(c.lambda_grid, Render)},
      {"tol", Render(c.tol)},
      {"mechanisms", Join(c.mechanisms, [](Mechanism m) { return Lower(ToString(m)); })},
      {"stream", ToString(c.stream)},
      {"stream_length", std::to_string(c.stream_length)},
      {"p_positive", Render(c.p_positive)},
      {"stream_ids", Join(c.stream_ids, [](Index i) { return std::to_string(i); })},
      {"epsilon", Render(c.budget.epsilon)},
      {"delta", Render(c.budget.delta)},
      {"noise", ToString(c.noise)},
      {"noise_c", Render(c.noise_c)},
      {"update_rule", ToString(c.rule)},
      {"capacity_policy", ToString(c.capacity_policy)},
      {"capacity_gamma", Render(c.capacity_gamma)},
      {"local_curvature", c.local_curvature ? "true" : "false"},
      {"mu", opt(c.mu)},
      {"L", opt(c.L)},
      {"C", opt(c.C)},
      {"M", opt(c.M)},
      {"seeds", Join(c.seeds, [](std::uint64_t s) { return std::to_string(s); })},
      {"eval_every", std::to_string(c.eval_every)},
      {"ta_window", std::to_string(c.ta_window)},
      {"out", c.out},
  };
  std::vector<std::pair<std::string, std::string>> echo;
  for (const auto& key : BenchKeys()) echo.emplace_back(key.name, values.at(key.name));
  return echo;
}

std::vector<std::pair<Index, double>> BenchReport::MeanCurve(
    const std::string& mechanism,
    const std::function<std::optional<double>(const BenchRecord&)>& field) const {
  std::map<Index, std::pair<double, int>> sums;
  for (const auto& r : records) {
    if (r.mechanism != mechanism) continue;
    const auto v = field(r);
    if (!v) continue;
    auto& slot = sums[r.delete_index];
    slot.first += *v;
    slot.second += 1;
  }
  std::vector<std::pair<Index, double>> curve;
  for (const auto& [k, s] : sums) curve.emplace_back(k, s.first / s.second);
  return curve;
}

Dataset LoadBenchData(const BenchConfig& config) {
  if (config.data == "synth") {
    return SynthGaussianBlobs(config.synth_n, config.synth_d,
                              config.synth_separation, config.data_seed);
  }
  return LoadCsv(config.data, config.label_column, config.has_header)
      .WithRandomSplit(config.test_fraction, config.data_seed);
}

BenchReport RunBench(const BenchConfig& config, const BenchObserver& observer) {
  config.Validate();
  const Dataset data = LoadBenchData(config);
  const TrainOptions train_options{.tol = config.tol};

  BenchReport report;
  BenchHeader& header = report.header;
  header.config = EchoConfig(config);
  header.n_train = static_cast<Index>(data.train_ids().size());
  header.n_test = static_cast<Index>(data.test_ids().size());
  header.dim = data.dim();
  header.ta_noise_expression = std::string(kTaNoiseExpression);
  header.environment = Environment();

  // One fit per lambda; best test accuracy wins, ties go to the larger lambda.
  std::optional<ModelState> model;
  for (double lambda : config.lambda_grid) {
    ObjectiveSpec spec;
    spec.loss = config.loss;
    spec.reg = config.reg;
    spec.lambda = lambda;
    ModelState fit = Train(data, spec, train_options);
    const double acc = Accuracy(data, data.test_ids(), fit.theta);
    header.grid_accuracy.push_back(acc);
    if (!model || acc > header.base_accuracy ||
        (acc == header.base_accuracy && lambda > model->lambda)) {
      model = std::move(fit);
      header.base_accuracy = acc;
    }
  }
  header.selected_lambda = model->lambda;

  SmoothnessConstants constants;
  if (config.mu) {
    constants = SmoothnessConstants{*config.mu, *config.L, *config.C, *config.M,
                                   ConstantsProvenance::kUserSupplied};
  } else {
    constants = EstimateConstants(data, data.train_ids(), model->spec, model->theta,
                                  EstimateOptions{config.local_curvature});
  }
  model->spec.constants = constants;
  header.mu = constants.mu;
  header.L = constants.L;
  header.C = constants.C;
  header.M = constants.M;
  header.constants_provenance =
      constants.provenance == ConstantsProvenance::kEstimated ? "estimated" : "config";
  try {
    header.capacity = CapacityLowerBound(header.n_train, header.dim, config.budget.epsilon,
                                         config.budget.delta, config.capacity_gamma,
                                         constants);
  } catch (const Error&) {
    header.capacity.reset();
  }
  if (observer.on_header) observer.on_header(header);

  const Branch branch = config.reg.smooth() ? Branch::kSmooth : Branch::kNonSmooth;
  Context ctx{config, data, *model, branch, observer, report};
  auto enabled = [&](Mechanism m) {
    return std::find(config.mechanisms.begin(), config.mechanisms.end(), m) !=
           config.mechanisms.end();
  };

  for (std::uint64_t seed : config.seeds) {
    StreamPolicy policy;
    policy.kind = config.stream;
    policy.length = config.stream_length;
    policy.seed = seed;
    policy.p_positive = config.p_positive;
    policy.ids = config.stream_ids;
    const std::vector<Index> stream = MakeStream(policy, data);

    std::vector<Vector> rt_path;
    if (enabled(Mechanism::kRT)) rt_path = RunRetrain(ctx, seed, stream);
    if (enabled(Mechanism::kIJ)) RunJackknife(ctx, seed, stream, rt_path);
    if (enabled(Mechanism::kTA)) RunTaylor(ctx, seed, stream, rt_path);
  }
  return report;
}

}  // namespace ijunlearn
