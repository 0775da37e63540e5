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

#ifndef IJUNLEARN_TOOLS_PROX_CHECK_H_
#define IJUNLEARN_TOOLS_PROX_CHECK_H_

#include <cstdint>
#include <string>
#include <vector>

namespace ijunlearn::tools {

struct ProxCheckResult {
  std::string name;
  int trials = 0;
  double worst = 0.0;  // largest observed error
  double tolerance = 0.0;
  bool passed = false;
};

// Randomized checks of ProxSolve against brute force and closed forms:
// grid search on 1-d and 2-d problems, diagonal soft-thresholding, and
// firm nonexpansiveness in the H-norm.
std::vector<ProxCheckResult> RunProxChecks(std::uint64_t seed, int trials);

}  // namespace ijunlearn::tools

#endif  // IJUNLEARN_TOOLS_PROX_CHECK_H_
