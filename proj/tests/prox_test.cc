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

#include <gtest/gtest.h>

#include <random>

#include "test_util.h"

namespace ijunlearn {
namespace {

using testing::Vec;
using testing::Vec2;

SymMatrix OracleMetric() {
  Matrix h(2, 2);
  h << oracle::kProxH[0], oracle::kProxH[1], oracle::kProxH[2], oracle::kProxH[3];
  return SymMatrix::FromLower(h);
}

SymMatrix RandomSpd(std::mt19937_64& rng, Index d) {
  std::normal_distribution<double> normal;
  Matrix a(d, d);
  for (Index i = 0; i < a.size(); ++i) a.data()[i] = normal(rng);
  Matrix h = a * a.transpose();
  h.diagonal().array() += 0.1;
  return SymMatrix::FromLower(h);
}

Vector RandomVector(std::mt19937_64& rng, Index d, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector v(d);
  for (Index j = 0; j < d; ++j) v(j) = normal(rng);
  return v;
}

double HNorm(const SymMatrix& h, const Vector& v) { return std::sqrt(v.dot(h * v)); }

TEST(SoftThresholdTest, Cases) {
  EXPECT_EQ(SoftThreshold(3.0, 1.0), 2.0);
  EXPECT_EQ(SoftThreshold(-3.0, 1.0), -2.0);
  EXPECT_EQ(SoftThreshold(0.5, 1.0), 0.0);
  EXPECT_EQ(SoftThreshold(1.0, 1.0), 0.0);
  EXPECT_EQ(SoftThreshold(-1.0, 1.0), 0.0);
}

TEST(ProxSolveTest, IdentityMetricSoftThresholds) {
  const Vector out = ProxSolve(ProxMetric(SymMatrix::Identity(3)), Vec({3.0, -0.5, 0.0}),
                               1.0, Regularizer::L1());
  EXPECT_NEAR(out(0), 2.0, 1e-12);
  EXPECT_EQ(out(1), 0.0);
  EXPECT_EQ(out(2), 0.0);
}

TEST(ProxSolveTest, VanishingPenaltyReturnsAnchor) {
  std::mt19937_64 rng(3);
  const SymMatrix h = RandomSpd(rng, 4);
  const Vector v = RandomVector(rng, 4, 1.0);
  const Vector out = ProxSolve(ProxMetric(h), v, 1e-14, Regularizer::L1());
  EXPECT_LE((out - v).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ProxSolveTest, ScalarMetric) {
  const Vector out = ProxSolve(ProxMetric(SymMatrix::Diagonal(Vec({2.0}))), Vec({2.0}), 1.0,
                               Regularizer::L1());
  EXPECT_NEAR(out(0), 1.5, 1e-12);
}

TEST(ProxSolveTest, MatchesFrozenOracle) {
  const Vector out = ProxSolve(ProxMetric(OracleMetric()), Vec2(oracle::kProxV),
                               oracle::kProxLambda, Regularizer::L1());
  EXPECT_NEAR(out(0), oracle::kProxOut[0], 1e-9);
  EXPECT_NEAR(out(1), oracle::kProxOut[1], 1e-9);
}

TEST(ProxSolveTest, DiagonalMetricIsPerCoordinateSoftThreshold) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> diag(0.2, 5.0);
  for (int t = 0; t < 50; ++t) {
    const Index d = 1 + t % 5;
    Vector w(d);
    for (Index j = 0; j < d; ++j) w(j) = diag(rng);
    const Vector v = RandomVector(rng, d, 2.0);
    const double lambda = 0.5 + 0.1 * (t % 3);
    const Vector out = ProxSolve(ProxMetric(SymMatrix::Diagonal(w)), v, lambda, Regularizer::L1());
    for (Index j = 0; j < d; ++j) {
      EXPECT_NEAR(out(j), SoftThreshold(v(j), lambda / w(j)), 1e-10);
    }
  }
}

TEST(ProxSolveTest, KktResidualIsSmall) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 30; ++t) {
    const Index d = 2 + t % 6;
    const SymMatrix h = RandomSpd(rng, d);
    const Vector v = RandomVector(rng, d, 1.5);
    const Regularizer reg = t % 2 == 0 ? Regularizer::L1() : Regularizer::ElasticNet(0.6);
    const ProxMetric metric(h);
    const Vector out = ProxSolve(metric, v, 0.4, reg);
    EXPECT_LE(ProxKktResidual(metric, v, 0.4, reg, out), 1e-8 * (1.0 + (h * v).norm()));
  }
}

TEST(ProxSolveTest, NonexpansiveInMetricNorm) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 50; ++t) {
    const SymMatrix h = RandomSpd(rng, 3);
    const ProxMetric metric(h);
    const Vector v1 = RandomVector(rng, 3, 1.0);
    const Vector v2 = RandomVector(rng, 3, 1.0);
    const Vector p1 = ProxSolve(metric, v1, 0.3, Regularizer::L1());
    const Vector p2 = ProxSolve(metric, v2, 0.3, Regularizer::L1());
    EXPECT_LE(HNorm(h, p1 - p2), HNorm(h, v1 - v2) + 1e-9);
  }
}

TEST(ProxSolveTest, RecoversPointWithBalancedSubgradient) {
  // v = p + lam H^-1 sign(p) puts the subgradient exactly in balance at p.
  std::mt19937_64 rng(14);
  for (int t = 0; t < 20; ++t) {
    const SymMatrix h = RandomSpd(rng, 3);
    const ProxMetric metric(h);
    const Vector p = Vec({1.0 + t * 0.1, -0.7, 0.3});
    const Vector v = p + 0.2 * Solve(metric.factor(), p.cwiseSign());
    const Vector out = ProxSolve(metric, v, 0.2, Regularizer::L1());
    EXPECT_LE((out - p).cwiseAbs().maxCoeff(), 1e-9);
    const Vector again = ProxSolve(metric, p + 0.2 * Solve(metric.factor(), out.cwiseSign()),
                                   0.2, Regularizer::L1());
    EXPECT_LE((again - out).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(ProxSolveTest, ElasticNetScalarClosedForm) {
  // argmin (v - t)^2 h / 2 + lam (a |t| + (1 - a) t^2)
  const double h = 1.5;
  const double v = 2.0;
  const double lam = 0.8;
  const double a = 0.25;
  const double expected = (h * v - lam * a) / (h + 2.0 * lam * (1.0 - a));
  const Vector out = ProxSolve(ProxMetric(SymMatrix::Diagonal(Vec({h}))), Vec({v}), lam,
                               Regularizer::ElasticNet(a));
  EXPECT_NEAR(out(0), expected, 1e-12);
}

TEST(ProxSolveTest, RejectsBadInputs) {
  const ProxMetric metric(SymMatrix::Identity(2));
  EXPECT_THROW_CODE(ProxSolve(metric, Vec({1.0}), 1.0, Regularizer::L1()),
                    ErrorCode::kDimensionMismatch);
  EXPECT_THROW_CODE(ProxSolve(metric, Vec({1.0, 2.0}), -1.0, Regularizer::L1()),
                    ErrorCode::kInvalidArgument);
  Matrix bad(2, 2);
  bad << 1.0, 0.0, 0.0, -1.0;
  EXPECT_THROW_CODE(ProxMetric(SymMatrix::FromLower(bad)), ErrorCode::kNotPositiveDefinite);
}

}  // namespace
}  // namespace ijunlearn
