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

#include "ijunlearn/prox.h"

#include <algorithm>
#include <cmath>

#include "ijunlearn/error.h"

namespace ijunlearn {

ProxMetric::ProxMetric(SymMatrix h)
    : h_(std::move(h)), factor_(Factorize(h_)) {}

double SoftThreshold(double v, double threshold) {
  if (v > threshold) return v - threshold;
  if (v < -threshold) return v + threshold;
  return 0.0;
}

double ProxKktResidual(const ProxMetric& metric, const Vector& anchor,
                       double lambda, const Regularizer& reg,
                       const Vector& theta) {
  const double l1 = lambda * reg.l1_weight();
  const double l2 = 2.0 * lambda * reg.l2_weight();
  const Vector g = metric.matrix() * Vector(theta - anchor) + l2 * theta;
  double sum_sq = 0.0;
  for (Index j = 0; j < g.size(); ++j) {
    double r = 0.0;
    if (theta(j) > 0.0) {
      r = g(j) + l1;
    } else if (theta(j) < 0.0) {
      r = g(j) - l1;
    } else {
      r = std::max(0.0, std::abs(g(j)) - l1);
    }
    sum_sq += r * r;
  }
  return std::sqrt(sum_sq);
}

Vector ProxSolve(const ProxMetric& metric, const Vector& anchor, double lambda,
                 const Regularizer& reg, ProxOptions options) {
  const Index d = metric.dim();
  if (anchor.size() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "anchor does not match metric");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kInvalidArgument, "prox needs lambda > 0");
  }
  if (!(options.tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "prox needs tol > 0");
  }
  RequireFinite(anchor, "prox anchor");

  const Matrix& h = metric.matrix().dense();
  const double l1 = lambda * reg.l1_weight();
  const double l2 = 2.0 * lambda * reg.l2_weight();
  const double kkt_tol = options.tol * (1.0 + (h * anchor).norm());

  Vector theta(d);
  for (Index j = 0; j < d; ++j) {
    const double a = h(j, j) + l2;
    theta(j) = SoftThreshold(h(j, j) * anchor(j), l1) / a;
  }
  // residual = H (theta - v), updated column by column.
  Vector residual = h * Vector(theta - anchor);

  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    double max_move = 0.0;
    for (Index j = 0; j < d; ++j) {
      const double a = h(j, j) + l2;
      // Coordinate objective: a/2 t^2 - (a theta_j - g_j) t + l1 |t| + const.
      const double g = residual(j) + l2 * theta(j);
      const double updated = SoftThreshold(a * theta(j) - g, l1) / a;
      const double move = updated - theta(j);
      if (move != 0.0) {
        residual += move * h.col(j);
        theta(j) = updated;
        max_move = std::max(max_move, std::abs(move));
      }
    }
    if (max_move <= options.tol / 10.0) {
      // Refresh the incrementally updated residual before the KKT test.
      residual = h * Vector(theta - anchor);
      if (ProxKktResidual(metric, anchor, lambda, reg, theta) <= kkt_tol) {
        RequireFinite(theta, "prox result");
        return theta;
      }
    }
  }
  throw Error(ErrorCode::kDidNotConverge,
              "prox coordinate descent exceeded " +
                  std::to_string(options.max_sweeps) + " sweeps");
}

}  // namespace ijunlearn
