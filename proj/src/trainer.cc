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

#include "ijunlearn/trainer.h"

#include <algorithm>
#include <cmath>
#include <optional>

#include "ijunlearn/error.h"
#include "ijunlearn/prox.h"

namespace ijunlearn {
namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-12;
constexpr double kInnerProxTol = 1e-12;

// Descent directions with a predicted decrease below this (relative to the
// objective) are taken in full: function values can no longer resolve them.
constexpr double kNegligibleDecrease = 1e-13;

// Prox of lambda pi under the identity metric (unit step).
Vector IdentityProx(const Vector& u, double lambda, const Regularizer& reg) {
  const double l1 = lambda * reg.l1_weight();
  const double scale = 1.0 / (1.0 + 2.0 * lambda * reg.l2_weight());
  Vector out(u.size());
  for (Index j = 0; j < u.size(); ++j) {
    out(j) = scale * (u(j) > l1 ? u(j) - l1 : (u(j) < -l1 ? u(j) + l1 : 0.0));
  }
  return out;
}

// Line search along `direction` given the predicted decrease (< 0).
Vector Backtrack(const Dataset& data, std::span<const Index> rows,
                 const ObjectiveSpec& spec, const Vector& theta,
                 const Vector& direction, double predicted) {
  const double f0 = ObjectiveValue(data, rows, spec, theta);
  if (-predicted <= kNegligibleDecrease * (1.0 + std::abs(f0))) {
    return theta + direction;
  }
  for (double t = 1.0; t >= kMinStep; t *= 0.5) {
    Vector candidate = theta + t * direction;
    const double f = ObjectiveValue(data, rows, spec, candidate);
    if (std::isfinite(f) && f <= f0 + kArmijo * t * predicted) return candidate;
  }
  return theta + kMinStep * direction;
}

ProxMetric RegularizedMetric(const SymMatrix& h) {
  try {
    return ProxMetric(h);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotPositiveDefinite) throw;
  }
  // Singular loss curvature (e.g. d > n): fall back to a ridged metric.
  const double base = 1.0 + h.dense().trace() / static_cast<double>(h.dim());
  for (double ridge = 1e-8; ridge <= 1e-2; ridge *= 10.0) {
    try {
      SymMatrix ridged = h;
      ridged.AddDiagonal(ridge * base);
      return ProxMetric(std::move(ridged));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotPositiveDefinite) throw;
    }
  }
  throw Error(ErrorCode::kNotPositiveDefinite, "loss Hessian is not usable");
}

}  // namespace

double OptimalityResidual(const Dataset& data, std::span<const Index> rows,
                          const ObjectiveSpec& spec, const Vector& theta) {
  if (spec.reg.smooth()) return SmoothGrad(data, rows, spec, theta).norm();
  const Vector g = MeanLossGrad(data, rows, spec.loss, theta);
  return (theta - IdentityProx(theta - g, spec.lambda, spec.reg)).norm();
}

ModelState TrainOnRows(const Dataset& data, std::span<const Index> rows,
                       const ObjectiveSpec& spec, TrainOptions options) {
  spec.Validate();
  if (rows.empty()) throw Error(ErrorCode::kEmptyDataset, "no training rows");
  if (!(options.tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  }

  ModelState state;
  state.theta = Vector::Zero(data.dim());
  state.lambda = spec.lambda;
  state.n = static_cast<Index>(rows.size());
  state.spec = spec;

  for (int iter = 0; iter <= options.max_iters; ++iter) {
    state.iterations = iter;
    if (spec.reg.smooth()) {
      const Vector g = SmoothGrad(data, rows, spec, state.theta);
      state.optimality_residual = g.norm();
      if (state.optimality_residual <= options.tol) return state;
      if (iter == options.max_iters) break;
      const PdFactor factor =
          Factorize(SmoothHessian(data, rows, spec, state.theta));
      const Vector step = -Solve(factor, g);
      state.theta =
          Backtrack(data, rows, spec, state.theta, step, g.dot(step));
    } else {
      state.optimality_residual =
          OptimalityResidual(data, rows, spec, state.theta);
      if (state.optimality_residual <= options.tol) return state;
      if (iter == options.max_iters) break;
      const Vector g = MeanLossGrad(data, rows, spec.loss, state.theta);
      const ProxMetric metric = RegularizedMetric(
          MeanLossHessian(data, rows, spec.loss, state.theta));
      const Vector anchor = state.theta - Solve(metric.factor(), g);
      const Vector target =
          ProxSolve(metric, anchor, spec.lambda, spec.reg,
                    ProxOptions{.tol = kInnerProxTol});
      const Vector step = target - state.theta;
      const double predicted =
          g.dot(step) + spec.lambda * (RegValue(spec.reg, target) -
                                       RegValue(spec.reg, state.theta));
      state.theta =
          Backtrack(data, rows, spec, state.theta, step, std::min(predicted, 0.0));
    }
    RequireFinite(state.theta, "iterate");
  }
  throw Error(ErrorCode::kDidNotConverge,
              "no convergence in " + std::to_string(options.max_iters) +
                  " iterations (residual " +
                  std::to_string(state.optimality_residual) + ")");
}

ModelState Train(const Dataset& data, const ObjectiveSpec& spec,
                 TrainOptions options) {
  return TrainOnRows(data, data.train_ids(), spec, options);
}

std::vector<Index> RemainingIds(const Dataset& data,
                                std::span<const Index> excluded) {
  std::vector<Index> drop(excluded.begin(), excluded.end());
  std::sort(drop.begin(), drop.end());
  drop.erase(std::unique(drop.begin(), drop.end()), drop.end());
  for (Index id : drop) {
    if (!data.is_train_id(id)) {
      throw Error(ErrorCode::kUnknownId,
                  "id " + std::to_string(id) + " is not a training row");
    }
  }
  std::vector<Index> remaining;
  const auto train = data.train_ids();
  remaining.reserve(train.size());
  std::set_difference(train.begin(), train.end(), drop.begin(), drop.end(),
                      std::back_inserter(remaining));
  if (remaining.empty()) {
    throw Error(ErrorCode::kAllDataDeleted, "every training row is excluded");
  }
  return remaining;
}

ModelState TrainLeaveOut(const Dataset& data, const ObjectiveSpec& spec,
                         std::span<const Index> excluded,
                         TrainOptions options) {
  const std::vector<Index> rows = RemainingIds(data, excluded);
  return TrainOnRows(data, rows, spec, options);
}

CvResult CvSelect(const Dataset& data, const ObjectiveSpec& spec_template,
                  std::span<const double> lambda_grid, TrainOptions options) {
  if (lambda_grid.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "lambda grid is empty");
  }
  const auto train = data.train_ids();
  if (train.size() < 2) {
    throw Error(ErrorCode::kAllDataDeleted,
                "leave-one-out CV needs at least two training rows");
  }
  CvResult result;
  std::optional<std::size_t> best;
  for (double lambda : lambda_grid) {
    ObjectiveSpec spec = spec_template;
    spec.lambda = lambda;
    double total = 0.0;
    std::vector<Index> rows(train.begin() + 1, train.end());
    for (std::size_t i = 0; i < train.size(); ++i) {
      // rows == train without train[i]
      if (i > 0) rows[i - 1] = train[i - 1];
      const ModelState model = TrainOnRows(data, rows, spec, options);
      total += LossValue(spec.loss, data.row(train[i]), data.target(train[i]),
                         model.theta);
    }
    const double error = total / static_cast<double>(train.size());
    result.lambdas.push_back(lambda);
    result.errors.push_back(error);
    const std::size_t k = result.errors.size() - 1;
    if (!best) {
      best = k;
      continue;
    }
    const double incumbent = result.errors[*best];
    const double slack = 1e-12 * std::max({1.0, std::abs(error), std::abs(incumbent)});
    if (error < incumbent - slack ||
        (std::abs(error - incumbent) <= slack &&
         lambda > result.lambdas[*best])) {
      best = k;
    }
  }
  result.selected_lambda = result.lambdas[*best];
  return result;
}

}  // namespace ijunlearn
