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

#ifndef IJUNLEARN_PITFALLS_H_
#define IJUNLEARN_PITFALLS_H_

#include <optional>

#include "ijunlearn/numkit.h"

namespace ijunlearn {

// Scalar mean estimation where leave-one-out CV over {0, big_lambda} flips
// its choice when one outlier is deleted. n - 1 points sit at -1/n and one at
// n; the outlier asks to be removed. Loss 1/2 (z - theta)^2, pi = theta^2,
// theta_hat(lambda) = mean / (1 + lambda) and Hessian inverse 1 / (1 + lambda).
struct CounterexampleReport {
  Index n = 0;
  double big_lambda = 0.0;

  // Closed-form leave-one-out CV errors at lambda = 0 and big_lambda.
  double cv_before_zero = 0.0;
  double cv_before_big = 0.0;
  double cv_after_zero = 0.0;
  double cv_after_big = 0.0;
  double lambda_before = 0.0;  // selected on all n points
  double lambda_after = 0.0;   // selected once the outlier is gone

  double theta_full = 0.0;     // theta_hat_n(lambda_before)
  double theta_removed = 0.0;  // Newton removal of the outlier at lambda_before
  double theta_retuned = 0.0;  // refit on the n - 1 points at lambda_after
  double gap = 0.0;            // |theta_removed - theta_retuned|
  double gap_times_n = 0.0;
  double truncation_bound = 0.0;  // n / big_lambda

  // Smooth-branch noise for the m = 1 deletion at n with unit constants and
  // a budget normalized so that sqrt(2 ln(1.25/delta)) / eps = 1.
  double noise_scale = 0.0;
  bool noise_below_gap = false;  // noise_scale * sqrt(d) < gap / 10, d = 1

  // Selections repeated with the generic exact-LOO selector on the same
  // data (regularizer weight conventions differ, argmins must not).
  // Empty when n < 3: the post-deletion set then has a single point.
  std::optional<double> cv_select_before;
  std::optional<double> cv_select_after;

  // Selections match the construction and the gap is 1/n within the
  // truncation error plus 1e-6.
  bool reproduced = false;
};

struct CounterexampleOptions {
  double big_lambda = 1e12;
  // Runs the generic selector as well; costs O(n^2) per grid point.
  bool cross_check = true;
};

// Throws BadN when n < 2 or big_lambda < 1e10.
CounterexampleReport RunCounterexample(Index n, CounterexampleOptions options = {});

}  // namespace ijunlearn

#endif  // IJUNLEARN_PITFALLS_H_
