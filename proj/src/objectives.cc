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

#include "ijunlearn/objectives.h"

#include <algorithm>
#include <array>
#include <cmath>

#include "ijunlearn/error.h"

namespace ijunlearn {
namespace {

// Estimated M and C never drop below this, so Validate() accepts losses with
// constant Hessians (squared error) whose true M is zero.
constexpr double kConstantFloor = 1e-12;

// Parameter-space radii at which Hessian-difference quotients are sampled.
constexpr std::array<double, 3> kProbeRadii = {1e-2, 1e-1, 1.0};

void RequireRows(std::span<const Index> rows) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyDataset, "no rows selected");
}

void RequireDim(const Dataset& data, const Vector& theta) {
  if (theta.size() != data.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "theta has " + std::to_string(theta.size()) +
                    " entries, data has d = " + std::to_string(data.dim()));
  }
}

Matrix Gather(const Dataset& data, std::span<const Index> rows) {
  return data.features()(rows, Eigen::all);
}

Vector GatherTargets(const Dataset& data, LossKind kind,
                     std::span<const Index> rows) {
  Vector y = data.targets()(rows);
  for (Index i = 0; i < y.size(); ++i) CheckTarget(kind, y(i));
  return y;
}

// Logistic sigma(-t) = 1 / (1 + exp(t)) without overflow.
double SigmoidOfNegative(double t) {
  if (t >= 0.0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

}  // namespace

Regularizer Regularizer::ElasticNet(double mix) {
  if (!(mix >= 0.0 && mix <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "elastic-net mix must be in [0, 1]");
  }
  return {RegKind::kElasticNet, mix};
}

double Regularizer::l1_weight() const {
  switch (kind) {
    case RegKind::kL1: return 1.0;
    case RegKind::kElasticNet: return mix;
    default: return 0.0;
  }
}

double Regularizer::l2_weight() const {
  switch (kind) {
    case RegKind::kL2: return 1.0;
    case RegKind::kElasticNet: return 1.0 - mix;
    default: return 0.0;
  }
}

void SmoothnessConstants::Validate() const {
  for (double v : {mu, L, C, M}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kConstantsInvalid,
                  "constants must be finite and positive (mu=" +
                      std::to_string(mu) + ", L=" + std::to_string(L) +
                      ", C=" + std::to_string(C) + ", M=" + std::to_string(M) +
                      ")");
    }
  }
}

void ObjectiveSpec::Validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must be finite and >= 0");
  }
  if (!(reg.mix >= 0.0 && reg.mix <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "elastic-net mix must be in [0, 1]");
  }
  if (!reg.smooth() && lambda <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "non-smooth regularizers require lambda > 0");
  }
}

std::string ToString(LossKind kind) {
  return kind == LossKind::kLogistic ? "logistic" : "squared";
}

std::string ToString(const Regularizer& reg) {
  switch (reg.kind) {
    case RegKind::kNone: return "none";
    case RegKind::kL2: return "l2";
    case RegKind::kL1: return "l1";
    case RegKind::kElasticNet: return "elasticnet:" + std::to_string(reg.mix);
  }
  return "?";
}

LossKind ParseLossKind(const std::string& name) {
  if (name == "logistic") return LossKind::kLogistic;
  if (name == "squared" || name == "squared_error") return LossKind::kSquaredError;
  throw Error(ErrorCode::kInvalidArgument, "unknown loss '" + name + "'");
}

Regularizer ParseRegularizer(const std::string& name) {
  if (name == "l2") return Regularizer::L2();
  if (name == "l1") return Regularizer::L1();
  if (name == "none") return Regularizer::None();
  const std::string prefix = "elasticnet:";
  if (name.rfind(prefix, 0) == 0) {
    try {
      return Regularizer::ElasticNet(std::stod(name.substr(prefix.size())));
    } catch (const std::logic_error&) {
      // fall through to the error below
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown regularizer '" + name + "'");
}

void CheckTarget(LossKind kind, double y) {
  if (kind == LossKind::kLogistic && y != 1.0 && y != -1.0) {
    throw Error(ErrorCode::kBadLabel,
                "logistic loss needs labels in {-1,+1}, got " + std::to_string(y));
  }
}

double LinkValue(LossKind kind, double margin, double y) {
  if (kind == LossKind::kSquaredError) return 0.5 * (y - margin) * (y - margin);
  const double t = y * margin;
  return std::log1p(std::exp(-std::abs(t))) + std::max(-t, 0.0);
}

double LinkSlope(LossKind kind, double margin, double y) {
  if (kind == LossKind::kSquaredError) return margin - y;
  return -y * SigmoidOfNegative(y * margin);
}

double LinkCurvature(LossKind kind, double margin, double y) {
  if (kind == LossKind::kSquaredError) return 1.0;
  const double s = SigmoidOfNegative(y * margin);
  return s * (1.0 - s);
}

double LossValue(LossKind kind, const Vector& x, double y, const Vector& theta) {
  CheckTarget(kind, y);
  if (x.size() != theta.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "x and theta differ in size");
  }
  return LinkValue(kind, x.dot(theta), y);
}

Vector LossGrad(LossKind kind, const Vector& x, double y, const Vector& theta) {
  CheckTarget(kind, y);
  if (x.size() != theta.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "x and theta differ in size");
  }
  return LinkSlope(kind, x.dot(theta), y) * x;
}

SymMatrix LossHessian(LossKind kind, const Vector& x, double y,
                      const Vector& theta) {
  CheckTarget(kind, y);
  if (x.size() != theta.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "x and theta differ in size");
  }
  const double w = LinkCurvature(kind, x.dot(theta), y);
  return SymMatrix::FromLower(w * x * x.transpose());
}

double RegValue(const Regularizer& reg, const Vector& theta) {
  return reg.l1_weight() * theta.lpNorm<1>() +
         reg.l2_weight() * theta.squaredNorm();
}

Vector RegGradSmooth(const Regularizer& reg, const Vector& theta) {
  if (!reg.smooth()) {
    throw Error(ErrorCode::kNonSmoothRegularizer,
                ToString(reg) + " has no gradient");
  }
  return 2.0 * reg.l2_weight() * theta;
}

SymMatrix RegHessianSmooth(const Regularizer& reg, Index dim) {
  if (!reg.smooth()) {
    throw Error(ErrorCode::kNonSmoothRegularizer,
                ToString(reg) + " has no Hessian");
  }
  SymMatrix h(dim);
  h.AddDiagonal(2.0 * reg.l2_weight());
  return h;
}

double MeanLoss(const Dataset& data, std::span<const Index> rows,
                LossKind kind, const Vector& theta) {
  RequireRows(rows);
  RequireDim(data, theta);
  const Vector y = GatherTargets(data, kind, rows);
  const Vector margins = Gather(data, rows) * theta;
  double total = 0.0;
  for (Index i = 0; i < margins.size(); ++i) {
    total += LinkValue(kind, margins(i), y(i));
  }
  return total / static_cast<double>(rows.size());
}

Vector SumLossGrad(const Dataset& data, std::span<const Index> rows,
                   LossKind kind, const Vector& theta) {
  RequireDim(data, theta);
  if (rows.empty()) return Vector::Zero(data.dim());
  const Vector y = GatherTargets(data, kind, rows);
  const Matrix x = Gather(data, rows);
  const Vector margins = x * theta;
  Vector slopes(margins.size());
  for (Index i = 0; i < margins.size(); ++i) {
    slopes(i) = LinkSlope(kind, margins(i), y(i));
  }
  return x.transpose() * slopes;
}

Vector MeanLossGrad(const Dataset& data, std::span<const Index> rows,
                    LossKind kind, const Vector& theta) {
  RequireRows(rows);
  return SumLossGrad(data, rows, kind, theta) /
         static_cast<double>(rows.size());
}

SymMatrix MeanLossHessian(const Dataset& data, std::span<const Index> rows,
                          LossKind kind, const Vector& theta) {
  RequireRows(rows);
  RequireDim(data, theta);
  ++Counters().hessian_assemblies;
  const Vector y = GatherTargets(data, kind, rows);
  const Matrix x = Gather(data, rows);
  const Vector margins = x * theta;
  const double inv_n = 1.0 / static_cast<double>(rows.size());
  Vector weights(margins.size());
  for (Index i = 0; i < margins.size(); ++i) {
    weights(i) = inv_n * LinkCurvature(kind, margins(i), y(i));
  }
  return SymMatrix::WeightedGram(x, weights);
}

double ObjectiveValue(const Dataset& data, std::span<const Index> rows,
                      const ObjectiveSpec& spec, const Vector& theta) {
  return MeanLoss(data, rows, spec.loss, theta) +
         spec.lambda * RegValue(spec.reg, theta);
}

Vector SmoothGrad(const Dataset& data, std::span<const Index> rows,
                  const ObjectiveSpec& spec, const Vector& theta) {
  Vector g = MeanLossGrad(data, rows, spec.loss, theta);
  if (spec.reg.smooth()) g += spec.lambda * RegGradSmooth(spec.reg, theta);
  return g;
}

SymMatrix SmoothHessian(const Dataset& data, std::span<const Index> rows,
                        const ObjectiveSpec& spec, const Vector& theta) {
  SymMatrix h = MeanLossHessian(data, rows, spec.loss, theta);
  if (spec.reg.smooth()) h.AddDiagonal(2.0 * spec.lambda * spec.reg.l2_weight());
  return h;
}

Vector SampleObjectiveGrad(const Dataset& data, Index id,
                           const ObjectiveSpec& spec, const Vector& theta) {
  Vector g = LossGrad(spec.loss, data.row(id), data.target(id), theta);
  if (spec.reg.smooth()) g += spec.lambda * RegGradSmooth(spec.reg, theta);
  return g;
}

SmoothnessConstants EstimateConstants(const Dataset& data,
                                      std::span<const Index> rows,
                                      const ObjectiveSpec& spec,
                                      const Vector& theta_ref,
                                      EstimateOptions options) {
  if (spec.constants) return *spec.constants;
  RequireRows(rows);
  RequireDim(data, theta_ref);

  double loss_modulus = 0.0;
  if (spec.loss == LossKind::kSquaredError) {
    // Constant Hessian: its smallest eigenvalue is a global modulus.
    loss_modulus = std::max(
        0.0, MinEigenvalue(MeanLossHessian(data, rows, spec.loss, theta_ref)));
  } else if (options.local_curvature) {
    loss_modulus =
        std::max(0.0, MinEigenvalue(MeanLossHessian(data, rows, spec.loss,
                                                     theta_ref))) /
        kConstantsSafetyFactor;
  }

  const Vector y = GatherTargets(data, spec.loss, rows);
  const Matrix x = Gather(data, rows);
  const Vector margins = x * theta_ref;
  const Vector reg_grad = spec.reg.smooth()
                              ? Vector(spec.lambda *
                                       RegGradSmooth(spec.reg, theta_ref))
                              : Vector::Zero(data.dim());

  double max_grad = 0.0;
  double max_hessian = 0.0;
  double max_quotient = 0.0;
  for (Index i = 0; i < margins.size(); ++i) {
    const double m = margins(i);
    const double norm_sq = x.row(i).squaredNorm();
    const double norm = std::sqrt(norm_sq);
    const Vector g =
        LinkSlope(spec.loss, m, y(i)) * x.row(i).transpose() + reg_grad;
    max_grad = std::max(max_grad, g.norm());

    const double curvature = LinkCurvature(spec.loss, m, y(i));
    max_hessian = std::max(max_hessian, curvature * norm_sq);
    if (norm == 0.0) continue;
    // Perturbing theta along x/||x|| moves the margin the most per unit step;
    // per-sample Hessians are rank one, so their spectral norms are scalars.
    for (double radius : kProbeRadii) {
      for (double sign : {-1.0, 1.0}) {
        const double shifted =
            LinkCurvature(spec.loss, m + sign * radius * norm, y(i));
        max_hessian = std::max(max_hessian, shifted * norm_sq);
        max_quotient = std::max(
            max_quotient, std::abs(shifted - curvature) * norm_sq / radius);
      }
    }
  }

  SmoothnessConstants out;
  out.mu = 2.0 * spec.lambda * spec.reg.l2_weight() + loss_modulus;
  out.L = kConstantsSafetyFactor * max_grad;
  out.C = std::max(kConstantFloor,
                   kConstantsSafetyFactor * std::max(max_hessian, max_quotient));
  out.M = std::max(kConstantFloor, kConstantsSafetyFactor * max_quotient);
  out.provenance = ConstantsProvenance::kEstimated;
  return out;
}

}  // namespace ijunlearn
