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

#include "ijunlearn/pitfalls.h"

#include <cmath>
#include <span>
#include <vector>

#include "ijunlearn/dataset.h"
#include "ijunlearn/error.h"
#include "ijunlearn/objectives.h"
#include "ijunlearn/trainer.h"
#include "ijunlearn/unlearner.h"

namespace ijunlearn {
namespace {

constexpr double kMinBigLambda = 1e10;

// Shrinkage 1 / (1 + lambda) of the ridge mean.
double Shrink(double lambda) { return 1.0 / (1.0 + lambda); }

// CV error on the full set: n - 1 folds that drop a point at -1/n and one
// fold that drops the point at n. The residual of the first folds is kept as
// s * mean - 1/n; a direct derivation gives s * mean + 1/n. Both select
// big_lambda for every n >= 2.
double CvBefore(double n, double lambda) {
  const double s = Shrink(lambda);
  const double mean_without_a = (n - (n - 2.0) / n) / (n - 1.0);
  const double a = s * mean_without_a - 1.0 / n;
  const double b = n + s / n;
  return (n - 1.0) / (2.0 * n) * a * a + b * b / (2.0 * n);
}

// CV error once the point at n is gone. Every fold predicts -s / n, so the
// n - 1 identical residuals are written as a single 1/(2n) term.
double CvAfter(double n, double lambda) {
  const double e = -1.0 / n + Shrink(lambda) / n;
  return e * e / (2.0 * n);
}

// Smaller error wins; exact ties go to the larger lambda.
double Pick(double err_zero, double err_big, double big_lambda) {
  return err_zero < err_big ? 0.0 : big_lambda;
}

// A budget with sqrt(2 ln(1.25 / delta)) / eps = 1.
PrivacyBudget NormalizedBudget() {
  return PrivacyBudget{1.0, 1.25 * std::exp(-0.5)};
}

double SelectWithCv(const std::vector<double>& points, double big_lambda) {
  const auto rows = static_cast<Index>(points.size());
  Vector targets(rows);
  for (Index i = 0; i < rows; ++i) targets(i) = points[static_cast<std::size_t>(i)];
  const Dataset data(Matrix::Ones(rows, 1), targets);
  ObjectiveSpec spec;
  spec.loss = LossKind::kSquaredError;
  spec.reg = Regularizer::L2();
  const std::vector<double> grid = {0.0, big_lambda};
  return CvSelect(data, spec, grid).selected_lambda;
}

}  // namespace

CounterexampleReport RunCounterexample(Index n, CounterexampleOptions options) {
  if (n < 2) throw Error(ErrorCode::kBadN, "need n >= 2");
  if (!(options.big_lambda >= kMinBigLambda) ||
      !std::isfinite(options.big_lambda)) {
    throw Error(ErrorCode::kBadN, "big_lambda must be finite and >= 1e10");
  }
  const double nd = static_cast<double>(n);
  const double big = options.big_lambda;

  CounterexampleReport r;
  r.n = n;
  r.big_lambda = big;
  r.truncation_bound = nd / big;
  r.cv_before_zero = CvBefore(nd, 0.0);
  r.cv_before_big = CvBefore(nd, big);
  r.cv_after_zero = CvAfter(nd, 0.0);
  r.cv_after_big = CvAfter(nd, big);
  r.lambda_before = Pick(r.cv_before_zero, r.cv_before_big, big);
  r.lambda_after = Pick(r.cv_after_zero, r.cv_after_big, big);

  const double mean = (-(nd - 1.0) / nd + nd) / nd;
  const double s = Shrink(r.lambda_before);
  r.theta_full = s * mean;
  r.theta_removed = r.theta_full + s * (r.theta_full - nd) / nd;
  r.theta_retuned = Shrink(r.lambda_after) * (-1.0 / nd);
  r.gap = std::abs(r.theta_removed - r.theta_retuned);
  r.gap_times_n = r.gap * nd;

  const SmoothnessConstants unit{1.0, 1.0, 1.0, 1.0, ConstantsProvenance::kUserSupplied};
  r.noise_scale = NoiseScale(Branch::kSmooth, 1, n, unit, NormalizedBudget());
  r.noise_below_gap = r.noise_scale < r.gap / 10.0;

  bool cross_ok = true;
  if (options.cross_check && n >= 3) {
    std::vector<double> points(static_cast<std::size_t>(n - 1), -1.0 / nd);
    const std::vector<double> after = points;
    points.push_back(nd);
    r.cv_select_before = SelectWithCv(points, big);
    r.cv_select_after = SelectWithCv(after, big);
    cross_ok = *r.cv_select_before == r.lambda_before &&
               *r.cv_select_after == r.lambda_after;
  }

  r.reproduced = cross_ok && r.lambda_before == big && r.lambda_after == 0.0 &&
                 std::abs(r.gap_times_n - 1.0) <=
                     1e-6 + nd * r.truncation_bound;
  return r;
}

}  // namespace ijunlearn
