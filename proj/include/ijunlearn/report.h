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

#ifndef IJUNLEARN_REPORT_H_
#define IJUNLEARN_REPORT_H_

#include <string>

#include "ijunlearn/bench.h"
#include "ijunlearn/pitfalls.h"

namespace ijunlearn {

// One JSON object per line, keys in a fixed order. The first line is
// {"header": {...}}; every later line is a record with the keys mechanism,
// seed, delete_index, cum_runtime_s, test_acc, dist_to_rt, noise_c
// (missing values are null).
std::string HeaderLine(const BenchHeader& header);
std::string RecordLine(const BenchRecord& record);

// Throws IoError when the file cannot be written.
void WriteReport(const BenchReport& report, const std::string& path);
// Throws IoError or ParseError.
BenchReport ReadReport(const std::string& path);

// Single-line JSON rendering of a counterexample run.
std::string CounterexampleJson(const CounterexampleReport& report);

}  // namespace ijunlearn

#endif  // IJUNLEARN_REPORT_H_
