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

#include "ijunlearn/report.h"

#include <fstream>
#include <nlohmann/json.hpp>

#include "ijunlearn/error.h"

namespace ijunlearn {
namespace {

using Json = nlohmann::ordered_json;

template <typename T>
Json OrNull(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> FromNullable(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

Json HeaderJson(const BenchHeader& h) {
  Json config = Json::object();
  for (const auto& [key, value] : h.config) config[key] = value;
  Json j;
  j["config"] = config;
  j["n_train"] = h.n_train;
  j["n_test"] = h.n_test;
  j["dim"] = h.dim;
  j["grid_accuracy"] = h.grid_accuracy;
  j["selected_lambda"] = h.selected_lambda;
  j["base_accuracy"] = h.base_accuracy;
  j["constants"] = {{"mu", h.mu}, {"L", h.L}, {"C", h.C}, {"M", h.M},
                    {"provenance", h.constants_provenance}};
  j["capacity"] = OrNull(h.capacity);
  j["ta_noise_expression"] = h.ta_noise_expression;
  j["environment"] = h.environment;
  return Json{{"header", j}};
}

BenchHeader HeaderFromJson(const Json& j) {
  BenchHeader h;
  for (const auto& [key, value] : j.at("config").items()) {
    h.config.emplace_back(key, value.get<std::string>());
  }
  h.n_train = j.at("n_train").get<Index>();
  h.n_test = j.at("n_test").get<Index>();
  h.dim = j.at("dim").get<Index>();
  h.grid_accuracy = j.at("grid_accuracy").get<std::vector<double>>();
  h.selected_lambda = j.at("selected_lambda").get<double>();
  h.base_accuracy = j.at("base_accuracy").get<double>();
  const Json& k = j.at("constants");
  h.mu = k.at("mu").get<double>();
  h.L = k.at("L").get<double>();
  h.C = k.at("C").get<double>();
  h.M = k.at("M").get<double>();
  h.constants_provenance = k.at("provenance").get<std::string>();
  h.capacity = FromNullable<Index>(j.at("capacity"));
  h.ta_noise_expression = j.at("ta_noise_expression").get<std::string>();
  h.environment = j.at("environment").get<std::string>();
  return h;
}

Json RecordJson(const BenchRecord& r) {
  Json j;
  j["mechanism"] = r.mechanism;
  j["seed"] = r.seed;
  j["delete_index"] = r.delete_index;
  j["cum_runtime_s"] = r.cum_runtime_s;
  j["test_acc"] = OrNull(r.test_acc);
  j["dist_to_rt"] = OrNull(r.dist_to_rt);
  j["noise_c"] = r.noise_c;
  return j;
}

BenchRecord RecordFromJson(const Json& j) {
  BenchRecord r;
  r.mechanism = j.at("mechanism").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.delete_index = j.at("delete_index").get<Index>();
  r.cum_runtime_s = j.at("cum_runtime_s").get<double>();
  r.test_acc = FromNullable<double>(j.at("test_acc"));
  r.dist_to_rt = FromNullable<double>(j.at("dist_to_rt"));
  r.noise_c = j.at("noise_c").get<double>();
  return r;
}

}  // namespace

std::string HeaderLine(const BenchHeader& header) {
  return HeaderJson(header).dump();
}

std::string RecordLine(const BenchRecord& record) {
  return RecordJson(record).dump();
}

void WriteReport(const BenchReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << HeaderLine(report.header) << '\n';
  for (const auto& r : report.records) out << RecordLine(r) << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write to " + path + " failed");
}

BenchReport ReadReport(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path);
  BenchReport report;
  std::string line;
  int line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const Json j = Json::parse(line);
      if (j.contains("header")) {
        report.header = HeaderFromJson(j.at("header"));
        seen_header = true;
      } else {
        report.records.push_back(RecordFromJson(j));
      }
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::kParseError,
                  path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!seen_header) {
    throw Error(ErrorCode::kParseError, path + ": missing header record");
  }
  return report;
}

std::string CounterexampleJson(const CounterexampleReport& r) {
  Json j;
  j["n"] = r.n;
  j["big_lambda"] = r.big_lambda;
  j["cv_before"] = {{"lambda_0", r.cv_before_zero}, {"lambda_big", r.cv_before_big}};
  j["cv_after"] = {{"lambda_0", r.cv_after_zero}, {"lambda_big", r.cv_after_big}};
  j["lambda_before"] = r.lambda_before;
  j["lambda_after"] = r.lambda_after;
  j["theta_full"] = r.theta_full;
  j["theta_removed"] = r.theta_removed;
  j["theta_retuned"] = r.theta_retuned;
  j["gap"] = r.gap;
  j["gap_times_n"] = r.gap_times_n;
  j["truncation_bound"] = r.truncation_bound;
  j["noise_scale"] = r.noise_scale;
  j["noise_below_gap"] = r.noise_below_gap;
  j["cv_select_before"] = OrNull(r.cv_select_before);
  j["cv_select_after"] = OrNull(r.cv_select_after);
  j["reproduced"] = r.reproduced;
  return j.dump();
}

}  // namespace ijunlearn
