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

#include <gtest/gtest.h>

#include <cmath>

#include "test_util.h"

namespace ijunlearn {
namespace {

TEST(CounterexampleTest, TenPoints) {
  const CounterexampleReport r = RunCounterexample(10);
  EXPECT_EQ(r.lambda_before, 1e12);
  EXPECT_EQ(r.lambda_after, 0.0);
  EXPECT_NEAR(r.theta_removed, 0.0, 1e-10);
  EXPECT_NEAR(r.theta_retuned, -0.1, 1e-15);
  EXPECT_NEAR(r.gap, 0.1, 1e-10);
  EXPECT_TRUE(r.reproduced);
  ASSERT_TRUE(r.cv_select_before.has_value());
  EXPECT_EQ(*r.cv_select_before, 1e12);
  EXPECT_EQ(*r.cv_select_after, 0.0);
}

TEST(CounterexampleTest, TwoPoints) {
  const CounterexampleReport r = RunCounterexample(2);
  EXPECT_EQ(r.lambda_before, r.big_lambda);
  EXPECT_NEAR(r.gap, 0.5, 1e-10);
  EXPECT_TRUE(r.reproduced);
  EXPECT_FALSE(r.cv_select_before.has_value());
}

TEST(CounterexampleTest, CvValuesAgainstFrozenOracle) {
  const CounterexampleReport r = RunCounterexample(10);
  EXPECT_NEAR(r.cv_before_big, oracle::kCvBeforeBigN10, 1e-9);
  EXPECT_EQ(r.cv_after_zero, 0.0);
  // The kept closed forms differ from the direct fold averages but pick the same lambdas.
  const double shrunk = -0.1 + 0.1 / (1.0 + 1e12);
  EXPECT_NEAR(r.cv_after_big, shrunk * shrunk / 20.0, 1e-15);
  EXPECT_GT(oracle::kCvAfterBigN10, 0.0);
  EXPECT_GT(std::abs(r.cv_before_zero - oracle::kCvBeforeZeroN10), 0.1);
  EXPECT_GT(r.cv_before_zero, r.cv_before_big);
  EXPECT_GT(oracle::kCvBeforeZeroN10, r.cv_before_big);
}

TEST(CounterexampleTest, SelectionFlipsForAllSizes) {
  for (Index n : {2, 10, 100, 1000}) {
    const CounterexampleReport r = RunCounterexample(n);
    EXPECT_EQ(r.lambda_before, r.big_lambda) << "n=" << n;
    EXPECT_EQ(r.lambda_after, 0.0) << "n=" << n;
    EXPECT_NEAR(r.gap_times_n, 1.0, 1e-6) << "n=" << n;
    EXPECT_LE(r.truncation_bound, static_cast<double>(n) / 1e12);
    EXPECT_TRUE(r.reproduced) << "n=" << n;
  }
}

TEST(CounterexampleTest, NoiseFallsBelowGap) {
  for (Index n : {100, 1000}) {
    const CounterexampleReport r = RunCounterexample(n);
    EXPECT_LT(r.noise_scale, r.gap / 10.0);
    EXPECT_TRUE(r.noise_below_gap);
  }
  EXPECT_FALSE(RunCounterexample(10).noise_below_gap);
}

TEST(CounterexampleTest, CrossCheckCanBeSkipped) {
  const CounterexampleReport r = RunCounterexample(50, CounterexampleOptions{1e12, false});
  EXPECT_FALSE(r.cv_select_before.has_value());
  EXPECT_TRUE(r.reproduced);
}

TEST(CounterexampleTest, Errors) {
  EXPECT_THROW_CODE(RunCounterexample(1), ErrorCode::kBadN);
  EXPECT_THROW_CODE(RunCounterexample(10, CounterexampleOptions{1e9, true}), ErrorCode::kBadN);
}

}  // namespace
}  // namespace ijunlearn
