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

#include "ijunlearn/unlearner.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "test_util.h"

namespace ijunlearn {
namespace {

using testing::OracleDataset;
using testing::RandomDataset;
using testing::ScalarDataset;
using testing::Vec;
using testing::Vec2;

const SmoothnessConstants kUnit{1.0, 1.0, 1.0, 1.0, ConstantsProvenance::kUserSupplied};

// sqrt(2 ln(1.25 / delta)) / epsilon = 1
PrivacyBudget NormalizedBudget() { return PrivacyBudget{1.0, 1.25 * std::exp(-0.5)}; }

UnlearnerOptions Noiseless() {
  UnlearnerOptions options;
  options.noise = NoiseMode::kDisabled;
  return options;
}

ObjectiveSpec Spec(LossKind loss, const Regularizer& reg, double lambda) {
  ObjectiveSpec spec;
  spec.loss = loss;
  spec.reg = reg;
  spec.lambda = lambda;
  return spec;
}

double MaxGap(const Vector& a, const Vector& b) { return (a - b).cwiseAbs().maxCoeff(); }

TEST(NoiseScaleTest, UnitSubstitutions) {
  const PrivacyBudget b = NormalizedBudget();
  EXPECT_NEAR(b.GaussianFactor(), 1.0, 1e-15);
  EXPECT_NEAR(NoiseScale(Branch::kSmooth, 0, 1, kUnit, b), 3.0, 1e-14);
  EXPECT_NEAR(NoiseScale(Branch::kNonSmooth, 0, 1, kUnit, b), 3.0, 1e-14);
  EXPECT_NEAR(NoiseScale(Branch::kSmooth, 1, 2, kUnit, b) * 4.0, 9.0, 1e-14);
  EXPECT_NEAR(NoiseScale(Branch::kNonSmooth, 1, 2, kUnit, b) * 4.0, 12.0, 1e-14);
}

TEST(NoiseScaleTest, MatchesFrozenOracle) {
  const SmoothnessConstants k{0.3, 2.0, 1.5, 0.8, ConstantsProvenance::kUserSupplied};
  EXPECT_NEAR(NoiseScale(Branch::kSmooth, 3, 50, k, PrivacyBudget{0.5, 1e-5}),
              oracle::kNoiseSmoothM3N50, 1e-12);
}

TEST(NoiseScaleTest, MonotoneInMAntitoneInN) {
  const PrivacyBudget b{0.7, 1e-4};
  for (Branch branch : {Branch::kSmooth, Branch::kNonSmooth}) {
    for (Index n : {10, 100, 1000}) {
      for (Index m = 0; m + 1 < n && m < 20; ++m) {
        EXPECT_LT(NoiseScale(branch, m, n, kUnit, b), NoiseScale(branch, m + 1, n, kUnit, b));
        EXPECT_GT(NoiseScale(branch, m, n, kUnit, b), NoiseScale(branch, m, n + 1, kUnit, b));
      }
    }
  }
}

TEST(NoiseScaleTest, Errors) {
  EXPECT_THROW_CODE(NoiseScale(Branch::kSmooth, 0, 10, kUnit, PrivacyBudget{0.0, 1e-5}),
                    ErrorCode::kBadBudget);
  EXPECT_THROW_CODE(NoiseScale(Branch::kSmooth, 0, 10, kUnit, PrivacyBudget{1.0, 1.0}),
                    ErrorCode::kBadBudget);
  SmoothnessConstants bad = kUnit;
  bad.mu = 0.0;
  EXPECT_THROW_CODE(NoiseScale(Branch::kSmooth, 0, 10, bad, PrivacyBudget{}),
                    ErrorCode::kConstantsInvalid);
}

TEST(TaNoiseScaleTest, Formula) {
  const SmoothnessConstants k{0.5, 2.0, 1.0, 3.0, ConstantsProvenance::kUserSupplied};
  const double expected = 4.0 * 2.0 * (2.0 * 1.0 * 0.5 + 3.0 * 2.0) / (0.125 * 100.0);
  EXPECT_NEAR(TaNoiseScale(2, 10, k, NormalizedBudget()), expected, 1e-12);
  EXPECT_EQ(TaNoiseScale(0, 10, k, NormalizedBudget()), 0.0);
}

TEST(CapacityTest, UnitExample) {
  EXPECT_EQ(CapacityLowerBound(1000000, 16, 1.0, 0.005, 0.01, kUnit),
            oracle::kCapacityUnitExample);
}

TEST(CapacityTest, ZeroGammaAndRegime) {
  EXPECT_EQ(CapacityLowerBound(1000000, 16, 1.0, 0.005, 0.0, kUnit), 0);
  EXPECT_THROW_CODE(CapacityLowerBound(1000, 16, 2.0, 0.005, 0.01, kUnit),
                    ErrorCode::kOutOfRegime);
  EXPECT_THROW_CODE(CapacityLowerBound(1000, 16, 1.0, 0.01, 0.01, kUnit),
                    ErrorCode::kOutOfRegime);
}

TEST(GeneralizationBoundTest, Examples) {
  const PrivacyBudget b = NormalizedBudget();
  EXPECT_NEAR(GeneralizationBound(1, 10, 1, b.epsilon, b.delta, kUnit), 0.46, 1e-14);
  EXPECT_EQ(GeneralizationBound(0, 10, 1, b.epsilon, b.delta, kUnit), 0.0);
  const SmoothnessConstants k{0.3, 2.0, 1.5, 0.8, ConstantsProvenance::kUserSupplied};
  EXPECT_NEAR(GeneralizationBound(3, 50, 4, 0.5, 1e-5, k), oracle::kGenBoundM3N50D4, 1e-9);
  for (Index m = 0; m < 20; ++m) {
    EXPECT_LT(GeneralizationBound(m, 50, 4, 0.5, 1e-5, k),
              GeneralizationBound(m + 1, 50, 4, 0.5, 1e-5, k));
  }
}

TEST(UnlearnerTest, ScalarExample) {
  const Dataset data = ScalarDataset({0.0, 2.0});
  const ModelState model = Train(data, Spec(LossKind::kSquaredError, Regularizer::L2(), 0.0));
  Unlearner u = Unlearner::Init(data, model, PrivacyBudget{}, 0, Branch::kSmooth, Noiseless());
  const RemovedModel out = u.DeleteOne(1);
  EXPECT_NEAR(out.noiseless(0), 0.5, 1e-12);
  EXPECT_EQ(out.published, out.noiseless);
  EXPECT_EQ(out.noise_scale, 0.0);
  EXPECT_EQ(out.deleted_count, 1);
  EXPECT_THROW_CODE(u.DeleteOne(1), ErrorCode::kAlreadyDeleted);
  EXPECT_THROW_CODE(u.DeleteOne(0), ErrorCode::kAllDataDeleted);
  EXPECT_THROW_CODE(u.DeleteOne(7), ErrorCode::kUnknownId);
}

TEST(UnlearnerTest, StepUsesFullHessian) {
  const Dataset data = RandomDataset(100, 5, 21, true);
  const ObjectiveSpec spec = Spec(LossKind::kLogistic, Regularizer::L2(), 0.05);
  const ModelState model = Train(data, spec);
  Unlearner u = Unlearner::Init(data, model, PrivacyBudget{}, 0, Branch::kSmooth, Noiseless());
  // Direct summation of per-sample Hessians plus the regularizer.
  Matrix h = Matrix::Zero(5, 5);
  for (Index id : data.train_ids()) {
    h += LossHessian(spec.loss, data.row(id), data.target(id), model.theta).dense();
  }
  h = h / 100.0 + 2.0 * spec.lambda * Matrix::Identity(5, 5);
  const Index id = data.train_ids()[3];
  const Vector expected =
      model.theta + h.ldlt().solve(SampleObjectiveGrad(data, id, spec, model.theta)) / 100.0;
  EXPECT_LE(MaxGap(u.DeleteOne(id).noiseless, expected), 1e-12);
}

TEST(UnlearnerTest, MatchesFrozenL2Update) {
  const Dataset data = OracleDataset();
  const ModelState model = Train(data, Spec(LossKind::kLogistic, Regularizer::L2(), oracle::kL2Lambda));
  Unlearner u = Unlearner::Init(data, model, PrivacyBudget{}, 0, Branch::kSmooth, Noiseless());
  EXPECT_LE(MaxGap(u.DeleteOne(2).noiseless, Vec2(oracle::kL2IjDrop2)), 1e-8);
}

TEST(UnlearnerTest, MatchesFrozenL1Updates) {
  const Dataset data = OracleDataset();
  const ModelState model = Train(data, Spec(LossKind::kLogistic, Regularizer::L1(), oracle::kL1Lambda));
  Unlearner stationary =
      Unlearner::Init(data, model, PrivacyBudget{}, 0, Branch::kNonSmooth, Noiseless());
  EXPECT_LE(MaxGap(stationary.DeleteOne(2).noiseless, Vec2(oracle::kL1IjDrop2)), 1e-6);
  UnlearnerOptions printed = Noiseless();
  printed.rule = UpdateRule::kAsPrinted;
  Unlearner literal = Unlearner::Init(data, model, PrivacyBudget{}, 0, Branch::kNonSmooth, printed);
  EXPECT_LE(MaxGap(literal.DeleteOne(2).noiseless, Vec2(oracle::kL1IjPrintedDrop2)), 1e-6);
}

TEST(UnlearnerTest, BranchMismatch) {
  const Dataset data = RandomDataset(20, 2, 1, true);
  const ModelState l2 = Train(data, Spec(LossKind::kLogistic, Regularizer::L2(), 0.1));
  const ModelState l1 = Train(data, Spec(LossKind::kLogistic, Regularizer::L1(), 0.1));
  EXPECT_THROW_CODE(Unlearner::Init(data, l2, PrivacyBudget{}, 0, Branch::kNonSmooth),
                    ErrorCode::kBranchMismatch);
  EXPECT_THROW_CODE(Unlearner::Init(data, l1, PrivacyBudget{}, 0, Branch::kSmooth),
                    ErrorCode::kBranchMismatch);
}

TEST(UnlearnerTest, FormulaNoiseNeedsValidConstants) {
  const Dataset data = RandomDataset(200, 2, 3, true);
  const ModelState model = Train(data, Spec(LossKind::kLogistic, Regularizer::L2(), 0.0));
  EXPECT_THROW_CODE(Unlearner::Init(data, model, PrivacyBudget{}, 0, Branch::kSmooth),
                    ErrorCode::kConstantsInvalid);
}

TEST(UnlearnerTest, FormulaNoiseUsesPreDeletionCount) {
  const Dataset data = RandomDataset(60, 3, 2, true);
  const ModelState model = Train(data, Spec(LossKind::kLogistic, Regularizer::L2(), 0.1));
  const PrivacyBudget budget{1.0, 1e-5};
  Unlearner u = Unlearner::Init(data, model, budget, 4, Branch::kSmooth);
  for (Index m = 0; m < 3; ++m) {
    const RemovedModel out = u.DeleteOne(data.train_ids()[static_cast<std::size_t>(m)]);
    EXPECT_DOUBLE_EQ(out.noise_scale,
                     NoiseScale(Branch::kSmooth, m, 60, u.constants(), budget));
  }
}

TEST(UnlearnerTest, NoiseIsDeterministicPerSeed) {
  const Dataset data = RandomDataset(60, 3, 2, true);
  const ModelState model = Train(data, Spec(LossKind::kLogistic, Regularizer::L2(), 0.1));
  UnlearnerOptions options;
  options.noise = NoiseMode::kFixed;
  options.fixed_noise_scale = 0.01;
  Unlearner a = Unlearner::Init(data, model, PrivacyBudget{}, 9, Branch::kSmooth, options);
  Unlearner b = Unlearner::Init(data, model, PrivacyBudget{}, 9, Branch::kSmooth, options);
  Unlearner c = Unlearner::Init(data, model, PrivacyBudget{}, 10, Branch::kSmooth, options);
  const Index id = data.train_ids()[5];
  const RemovedModel ra = a.DeleteOne(id);
  EXPECT_EQ(ra.published, b.DeleteOne(id).published);
  EXPECT_NE(ra.published, c.DeleteOne(id).published);
  EXPECT_EQ(ra.noise_scale, 0.01);
  EXPECT_GT(MaxGap(ra.published, ra.noiseless), 0.0);
}

TEST(UnlearnerTest, CapacityPolicy) {
  const Dataset data = RandomDataset(40, 3, 2, true);
  const ModelState model = Train(data, Spec(LossKind::kLogistic, Regularizer::L2(), 0.1));
  UnlearnerOptions options = Noiseless();
  const PrivacyBudget budget{1.0, 1e-3};
  Unlearner warn = Unlearner::Init(data, model, budget, 0, Branch::kSmooth, options);
  EXPECT_TRUE(warn.DeleteOne(data.train_ids()[0]).capacity_warning);
  options.capacity_policy = CapacityPolicy::kError;
  Unlearner strict = Unlearner::Init(data, model, budget, 0, Branch::kSmooth, options);
  EXPECT_THROW_CODE(strict.DeleteOne(data.train_ids()[0]), ErrorCode::kCapacityExhausted);
}

TEST(UnlearnerTest, DeletionsDoNoHessianWork) {
  const Dataset data = RandomDataset(80, 4, 3, true);
  const ModelState model = Train(data, Spec(LossKind::kLogistic, Regularizer::L2(), 0.05));
  ResetCounters();
  Unlearner u = Unlearner::Init(data, model, PrivacyBudget{}, 0, Branch::kSmooth, Noiseless());
  EXPECT_EQ(Counters().factorizations, 1u);
  const auto assemblies = Counters().hessian_assemblies;
  for (std::size_t k = 0; k < 20; ++k) u.DeleteOne(data.train_ids()[k]);
  EXPECT_EQ(Counters().factorizations, 1u);
  EXPECT_EQ(Counters().hessian_assemblies, assemblies);

  ResetCounters();
  const std::vector<Index> ids = {data.train_ids()[0], data.train_ids()[1]};
  TaOptions ta;
  ta.noise = NoiseMode::kDisabled;
  TaBatchRemove(data, model, ids, PrivacyBudget{}, 0, Branch::kSmooth, ta);
  EXPECT_EQ(Counters().factorizations, 1u);
  EXPECT_EQ(Counters().hessian_assemblies, 1u);
}

class BatchStreamTest : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(BatchStreamTest, SmoothAndNonSmooth) {
  const std::uint64_t seed = GetParam();
  const Dataset data = RandomDataset(120, 4, seed, true);
  std::vector<Index> ids(data.train_ids().begin(), data.train_ids().end());
  SeededShuffle(ids, seed);
  ids.resize(20);

  const ModelState smooth = Train(data, Spec(LossKind::kLogistic, Regularizer::L2(), 0.05));
  Unlearner u = Unlearner::Init(data, smooth, PrivacyBudget{}, 0, Branch::kSmooth, Noiseless());
  u.DeleteOne(ids[0]);
  EXPECT_EQ(u.CheckAgainstBatch().output_gap, 0.0);
  for (std::size_t k = 1; k < ids.size(); ++k) u.DeleteOne(ids[k]);
  EXPECT_LE(u.CheckAgainstBatch().output_gap, 1e-9);

  const ModelState sparse = Train(data, Spec(LossKind::kLogistic, Regularizer::L1(), 0.02));
  Unlearner v = Unlearner::Init(data, sparse, PrivacyBudget{}, 0, Branch::kNonSmooth, Noiseless());
  for (Index id : ids) v.DeleteOne(id);
  const BatchStreamGap gap = v.CheckAgainstBatch();
  EXPECT_LE(gap.accumulator_gap, 1e-9);
  EXPECT_LE(gap.output_gap, 1e-8);
}

INSTANTIATE_TEST_SUITE_P(Seeds, BatchStreamTest, ::testing::Range<std::uint64_t>(0, 10));

TEST(UnlearnerTest, SecondProximityBound) {
  // ||theta_{n,-U} - theta_bar|| <= 2 m^2 C L / (n^2 mu^2) + m^2 M L^2 / (n^2 mu^3)
  for (Index n : {200, 500}) {
    const Dataset data = RandomDataset(n, 3, static_cast<std::uint64_t>(n), true);
    const ObjectiveSpec spec = Spec(LossKind::kLogistic, Regularizer::L2(), 0.05);
    const ModelState model = Train(data, spec);
    Unlearner u = Unlearner::Init(data, model, PrivacyBudget{}, 0, Branch::kSmooth, Noiseless());
    const SmoothnessConstants& k = u.constants();
    std::vector<Index> removed;
    for (Index m = 1; m <= 10; ++m) {
      removed.push_back(data.train_ids()[static_cast<std::size_t>(3 * m)]);
      const Vector approx = u.DeleteOne(removed.back()).noiseless;
      if (m != 1 && m != 5 && m != 10) continue;
      const double nn = static_cast<double>(n) * static_cast<double>(n);
      const double mm = static_cast<double>(m * m);
      const double bound = 2.0 * mm * k.C * k.L / (nn * k.mu * k.mu) +
                           mm * k.M * k.L * k.L / (nn * k.mu * k.mu * k.mu);
      EXPECT_LE((TrainLeaveOut(data, spec, removed).theta - approx).norm(), bound);
    }
  }
}

TEST(TaBatchRemoveTest, ScalarExampleIsExact) {
  const Dataset data = ScalarDataset({0.0, 2.0});
  const ModelState model = Train(data, Spec(LossKind::kSquaredError, Regularizer::L2(), 0.0));
  TaOptions options;
  options.noise = NoiseMode::kDisabled;
  const std::vector<Index> ids = {1};
  const RemovedModel out = TaBatchRemove(data, model, ids, PrivacyBudget{}, 0, Branch::kSmooth, options);
  EXPECT_NEAR(out.noiseless(0), 0.0, 1e-12);
  const std::vector<Index> all = {0, 1};
  EXPECT_THROW_CODE(TaBatchRemove(data, model, all, PrivacyBudget{}, 0, Branch::kSmooth, options),
                    ErrorCode::kAllDataDeleted);
}

TEST(TaBatchRemoveTest, MatchesFrozenOracle) {
  const Dataset data = OracleDataset();
  const ModelState model = Train(data, Spec(LossKind::kLogistic, Regularizer::L2(), oracle::kL2Lambda));
  TaOptions options;
  options.noise = NoiseMode::kDisabled;
  const std::vector<Index> ids = {2};
  const RemovedModel out = TaBatchRemove(data, model, ids, PrivacyBudget{}, 0, Branch::kSmooth, options);
  EXPECT_LE(MaxGap(out.noiseless, Vec2(oracle::kL2TaDrop2)), 1e-8);
}

TEST(TaBatchRemoveTest, ExactOnQuadratics) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Dataset data = RandomDataset(50, 4, seed, false);
    const ObjectiveSpec spec = Spec(LossKind::kSquaredError, Regularizer::L2(), 0.1);
    const ModelState model = Train(data, spec);
    std::vector<Index> ids(data.train_ids().begin(), data.train_ids().begin() + 7);
    TaOptions options;
    options.noise = NoiseMode::kDisabled;
    const RemovedModel ta = TaBatchRemove(data, model, ids, PrivacyBudget{}, 0, Branch::kSmooth, options);
    EXPECT_LE(MaxGap(ta.noiseless, TrainLeaveOut(data, spec, ids).theta), 1e-8);
    // IJ keeps the full-data Hessian, so it is not exact here.
    Unlearner u = Unlearner::Init(data, model, PrivacyBudget{}, 0, Branch::kSmooth, Noiseless());
    Vector ij;
    for (Index id : ids) ij = u.DeleteOne(id).noiseless;
    EXPECT_GT(MaxGap(ij, ta.noiseless), 1e-8);
  }
}

TEST(TaBatchRemoveTest, NonSmoothCloseToRetrain) {
  const Dataset data = RandomDataset(200, 3, 4, true);
  const ObjectiveSpec spec = Spec(LossKind::kLogistic, Regularizer::L1(), 0.01);
  const ModelState model = Train(data, spec);
  const std::vector<Index> ids = {data.train_ids()[0], data.train_ids()[9]};
  TaOptions options;
  options.noise = NoiseMode::kDisabled;
  const RemovedModel ta = TaBatchRemove(data, model, ids, PrivacyBudget{}, 0, Branch::kNonSmooth, options);
  const Vector rt = TrainLeaveOut(data, spec, ids).theta;
  EXPECT_LE((ta.noiseless - rt).norm(), 0.1 * (model.theta - rt).norm() + 1e-9);
}

TEST(TaBatchRemoveTest, DuplicatesAndNoise) {
  const Dataset data = RandomDataset(50, 2, 5, true);
  const ModelState model = Train(data, Spec(LossKind::kLogistic, Regularizer::L2(), 0.1));
  const Index a = data.train_ids()[0];
  const std::vector<Index> once = {a};
  const std::vector<Index> twice = {a, a};
  const PrivacyBudget budget{1.0, 1e-5};
  const RemovedModel r1 = TaBatchRemove(data, model, once, budget, 3, Branch::kSmooth);
  const RemovedModel r2 = TaBatchRemove(data, model, twice, budget, 3, Branch::kSmooth);
  EXPECT_EQ(r1.published, r2.published);
  EXPECT_EQ(r1.deleted_count, 1);
  const SmoothnessConstants k =
      EstimateConstants(data, data.train_ids(), model.spec, model.theta);
  EXPECT_DOUBLE_EQ(r1.noise_scale, TaNoiseScale(1, 50, k, budget));
}

}  // namespace
}  // namespace ijunlearn
