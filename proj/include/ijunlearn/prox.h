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

#ifndef IJUNLEARN_PROX_H_
#define IJUNLEARN_PROX_H_

#include "ijunlearn/numkit.h"
#include "ijunlearn/objectives.h"

namespace ijunlearn {

// A positive-definite metric H, validated (factorized) once at construction
// so repeated prox solves under the same H never refactorize.
class ProxMetric {
 public:
  explicit ProxMetric(SymMatrix h);

  const SymMatrix& matrix() const { return h_; }
  const PdFactor& factor() const { return factor_; }
  Index dim() const { return h_.dim(); }

 private:
  SymMatrix h_;
  PdFactor factor_;
};

struct ProxOptions {
  double tol = 1e-10;
  int max_sweeps = 200000;
};

// argmin_theta  1/2 ||v - theta||_H^2 + lambda pi(theta)
//
// Cyclic coordinate descent on the strongly convex prox objective, started
// from the diagonal soft-threshold of v. The smooth (1 - mix)||theta||^2 part
// of an elastic net is absorbed into the quadratic. Sweeps stop once the
// largest coordinate move is <= tol / 10 and the KKT residual is
// <= tol (1 + ||H v||). Throws DidNotConverge after max_sweeps.
Vector ProxSolve(const ProxMetric& metric, const Vector& anchor, double lambda,
                 const Regularizer& reg, ProxOptions options = {});

// dist(H (theta - v), -lambda d pi(theta)) in the Euclidean norm.
double ProxKktResidual(const ProxMetric& metric, const Vector& anchor,
                       double lambda, const Regularizer& reg,
                       const Vector& theta);

// Componentwise soft-threshold sign(v) max(|v| - t, 0); exact ties give 0.
double SoftThreshold(double v, double threshold);

}  // namespace ijunlearn

#endif  // IJUNLEARN_PROX_H_
