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

#include "prox_check.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ijunlearn/prox.h"

namespace ijunlearn::tools {
namespace {

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * UniformUnit(rng);
}

double ProxObjective(const Matrix& h, const Vector& v, double lambda,
                     const Regularizer& reg, const Vector& theta) {
  const Vector r = v - theta;
  return 0.5 * r.dot(h * r) + lambda * RegValue(reg, theta);
}

// Coarse-to-fine grid search; the objective is strongly convex, so the fine
// pass around the coarse winner finds the global minimizer to the grid step.
Vector GridArgmin(const Matrix& h, const Vector& v, double lambda,
                  const Regularizer& reg) {
  const Index d = v.size();
  const double radius = 2.0 * v.cwiseAbs().maxCoeff() + 1.0;
  Vector center = Vector::Zero(d);
  double half_width = radius;
  for (double step : {1e-2, 1e-4}) {
    const auto k = static_cast<long>(std::ceil(half_width / step));
    Vector best = center;
    double best_value = std::numeric_limits<double>::infinity();
    Vector theta(d);
    const long outer = d == 2 ? k : 0;
    for (long a = -outer; a <= outer; ++a) {
      for (long b = -k; b <= k; ++b) {
        theta(0) = center(0) + b * step;
        if (d == 2) theta(1) = center(1) + a * step;
        const double value = ProxObjective(h, v, lambda, reg, theta);
        if (value < best_value) {
          best_value = value;
          best = theta;
        }
      }
    }
    center = best;
    half_width = 2e-2;
  }
  return center;
}

SymMatrix RandomSpd(std::mt19937_64& rng, Index d) {
  Matrix a(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) a(i, j) = Uniform(rng, -1.0, 1.0);
  }
  Matrix h = a * a.transpose();
  h.diagonal().array() += 0.5;
  return SymMatrix::FromLower(h);
}

Regularizer RandomRegularizer(std::mt19937_64& rng) {
  return UniformUnit(rng) < 0.5 ? Regularizer::L1()
                                : Regularizer::ElasticNet(Uniform(rng, 0.2, 1.0));
}

ProxCheckResult GridCheck(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  ProxCheckResult out{"grid_search_1d_2d", trials, 0.0, 1e-3, true};
  for (int t = 0; t < trials; ++t) {
    const Index d = 1 + static_cast<Index>(t % 2);
    const ProxMetric metric(RandomSpd(rng, d));
    Vector v(d);
    for (Index j = 0; j < d; ++j) v(j) = Uniform(rng, -3.0, 3.0);
    const double lambda = Uniform(rng, 0.1, 2.0);
    const Regularizer reg = RandomRegularizer(rng);
    const Vector fast = ProxSolve(metric, v, lambda, reg);
    const Vector brute = GridArgmin(metric.matrix().dense(), v, lambda, reg);
    out.worst = std::max(out.worst, (fast - brute).cwiseAbs().maxCoeff());
  }
  out.passed = out.worst <= out.tolerance;
  return out;
}

ProxCheckResult DiagonalCheck(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  ProxCheckResult out{"diagonal_soft_threshold", trials, 0.0, 1e-10, true};
  for (int t = 0; t < trials; ++t) {
    const Index d = 1 + static_cast<Index>(UniformBelow(rng, 6));
    Vector diag(d);
    Vector v(d);
    for (Index j = 0; j < d; ++j) {
      diag(j) = Uniform(rng, 0.5, 3.0);
      v(j) = Uniform(rng, -3.0, 3.0);
    }
    const double lambda = Uniform(rng, 0.1, 2.0);
    const Vector fast =
        ProxSolve(ProxMetric(SymMatrix::Diagonal(diag)), v, lambda, Regularizer::L1());
    for (Index j = 0; j < d; ++j) {
      const double expected = SoftThreshold(v(j), lambda / diag(j));
      out.worst = std::max(out.worst, std::abs(fast(j) - expected));
    }
  }
  out.passed = out.worst <= out.tolerance;
  return out;
}

ProxCheckResult NonexpansiveCheck(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  ProxCheckResult out{"h_norm_nonexpansive", trials, 0.0, 1e-9, true};
  for (int t = 0; t < trials; ++t) {
    const Index d = 1 + static_cast<Index>(UniformBelow(rng, 5));
    const ProxMetric metric(RandomSpd(rng, d));
    Vector v1(d);
    Vector v2(d);
    for (Index j = 0; j < d; ++j) {
      v1(j) = Uniform(rng, -3.0, 3.0);
      v2(j) = Uniform(rng, -3.0, 3.0);
    }
    const double lambda = Uniform(rng, 0.1, 2.0);
    const Regularizer reg = RandomRegularizer(rng);
    const Vector p = ProxSolve(metric, v1, lambda, reg) - ProxSolve(metric, v2, lambda, reg);
    const Vector q = v1 - v2;
    const Matrix& h = metric.matrix().dense();
    const double excess = std::sqrt(p.dot(h * p)) - std::sqrt(q.dot(h * q));
    out.worst = std::max(out.worst, excess);
  }
  out.passed = out.worst <= out.tolerance;
  return out;
}

}  // namespace

std::vector<ProxCheckResult> RunProxChecks(std::uint64_t seed, int trials) {
  return {GridCheck(MixSeed(seed, 1), trials),
          DiagonalCheck(MixSeed(seed, 2), trials),
          NonexpansiveCheck(MixSeed(seed, 3), trials)};
}

}  // namespace ijunlearn::tools
