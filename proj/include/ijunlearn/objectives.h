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

#ifndef IJUNLEARN_OBJECTIVES_H_
#define IJUNLEARN_OBJECTIVES_H_

// Losses, regularizers and the constants (mu, L, C, M) that calibrate noise.
//
// Both losses are generalized linear: l(z, theta) = phi(x^T theta, y), so the
// per-sample gradient is phi'(m, y) x and the Hessian is phi''(m, y) x x^T.
//
//   Logistic:      phi = log(1 + exp(-y m)),  y in {-1, +1}
//   SquaredError:  phi = (y - m)^2 / 2
//
// Regularizers, without the lambda weight:
//   L2          ||theta||^2
//   L1          ||theta||_1
//   ElasticNet  mix ||theta||_1 + (1 - mix) ||theta||^2
//   None        0

#include <optional>
#include <span>
#include <string>

#include "ijunlearn/dataset.h"
#include "ijunlearn/numkit.h"

namespace ijunlearn {

enum class LossKind { kLogistic, kSquaredError };

enum class RegKind { kNone, kL2, kL1, kElasticNet };

struct Regularizer {
  RegKind kind = RegKind::kL2;
  double mix = 0.0;  // L1 share; meaningful for kElasticNet only.

  static Regularizer None() { return {RegKind::kNone, 0.0}; }
  static Regularizer L2() { return {RegKind::kL2, 0.0}; }
  static Regularizer L1() { return {RegKind::kL1, 1.0}; }
  static Regularizer ElasticNet(double mix);

  // Weight on ||theta||_1 and on ||theta||^2.
  double l1_weight() const;
  double l2_weight() const;
  bool smooth() const { return l1_weight() == 0.0; }
};

enum class ConstantsProvenance { kUserSupplied, kEstimated };

struct SmoothnessConstants {
  double mu = 0.0;  // strong-convexity modulus
  double L = 0.0;   // gradient-norm (Lipschitz) bound
  double C = 0.0;   // loss Hessian bound / Lipschitz constant
  double M = 0.0;   // Hessian smoothness of the objective
  ConstantsProvenance provenance = ConstantsProvenance::kUserSupplied;

  // Throws ConstantsInvalid unless all four are finite and > 0.
  void Validate() const;
};

struct ObjectiveSpec {
  LossKind loss = LossKind::kLogistic;
  Regularizer reg = Regularizer::L2();
  double lambda = 0.0;
  std::optional<SmoothnessConstants> constants;

  // lambda >= 0, lambda > 0 for non-smooth regularizers, mix in [0, 1].
  void Validate() const;
};

std::string ToString(LossKind kind);
std::string ToString(const Regularizer& reg);
LossKind ParseLossKind(const std::string& name);
// Accepts "l2", "l1", "none", "elasticnet:<mix>".
Regularizer ParseRegularizer(const std::string& name);

// Scalar link derivatives at margin m.
double LinkValue(LossKind kind, double margin, double y);
double LinkSlope(LossKind kind, double margin, double y);
double LinkCurvature(LossKind kind, double margin, double y);

// Throws BadLabel when the loss requires y in {-1, +1} and y is not.
void CheckTarget(LossKind kind, double y);

// Per-sample loss, gradient and Hessian at theta.
double LossValue(LossKind kind, const Vector& x, double y, const Vector& theta);
Vector LossGrad(LossKind kind, const Vector& x, double y, const Vector& theta);
SymMatrix LossHessian(LossKind kind, const Vector& x, double y,
                      const Vector& theta);

// pi(theta) without lambda.
double RegValue(const Regularizer& reg, const Vector& theta);
// Throw NonSmoothRegularizer for regularizers with an L1 part.
Vector RegGradSmooth(const Regularizer& reg, const Vector& theta);
SymMatrix RegHessianSmooth(const Regularizer& reg, Index dim);

// Empirical quantities over a subset of dataset rows. "Loss" means the mean
// (1/|rows|) sum l(z_i, theta); "objective" adds lambda pi(theta).
double MeanLoss(const Dataset& data, std::span<const Index> rows,
                LossKind kind, const Vector& theta);
Vector MeanLossGrad(const Dataset& data, std::span<const Index> rows,
                    LossKind kind, const Vector& theta);
// Sum (not mean) of per-sample loss gradients.
Vector SumLossGrad(const Dataset& data, std::span<const Index> rows,
                   LossKind kind, const Vector& theta);
// Counts one Hessian assembly.
SymMatrix MeanLossHessian(const Dataset& data, std::span<const Index> rows,
                          LossKind kind, const Vector& theta);

double ObjectiveValue(const Dataset& data, std::span<const Index> rows,
                      const ObjectiveSpec& spec, const Vector& theta);
// Gradient / Hessian of the smooth part: mean loss plus lambda pi when pi is
// smooth, mean loss alone otherwise.
Vector SmoothGrad(const Dataset& data, std::span<const Index> rows,
                  const ObjectiveSpec& spec, const Vector& theta);
SymMatrix SmoothHessian(const Dataset& data, std::span<const Index> rows,
                        const ObjectiveSpec& spec, const Vector& theta);

// Gradient of the per-sample objective f(z, theta) = l(z, theta) + lambda
// pi(theta) when pi is smooth; the plain loss gradient otherwise.
Vector SampleObjectiveGrad(const Dataset& data, Index id,
                           const ObjectiveSpec& spec, const Vector& theta);

inline constexpr double kConstantsSafetyFactor = 1.5;

struct EstimateOptions {
  // Logistic loss has no global strong-convexity modulus. When set, the
  // smallest eigenvalue of the mean loss Hessian at theta_ref (deflated by
  // the safety factor) is used as the loss's local modulus instead of 0.
  bool local_curvature = false;
};

// Empirical constants at theta_ref over the given rows:
//   mu = 2 lambda l2_weight + (loss modulus, see EstimateOptions)
//   L  = 1.5 max_i ||grad f_i||   (objective when pi smooth, loss otherwise)
//   C  = 1.5 max_i max(||hess l_i||, Hessian-difference quotient)
//   M  = 1.5 max_i Hessian-difference quotient
// A user-supplied spec.constants is returned untouched.
SmoothnessConstants EstimateConstants(const Dataset& data,
                                      std::span<const Index> rows,
                                      const ObjectiveSpec& spec,
                                      const Vector& theta_ref,
                                      EstimateOptions options = {});

}  // namespace ijunlearn

#endif  // IJUNLEARN_OBJECTIVES_H_
