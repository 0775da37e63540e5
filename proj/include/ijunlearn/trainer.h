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

#ifndef IJUNLEARN_TRAINER_H_
#define IJUNLEARN_TRAINER_H_

#include <span>
#include <string>
#include <vector>

#include "ijunlearn/dataset.h"
#include "ijunlearn/objectives.h"

namespace ijunlearn {

// Stand-in for lambda = infinity in hyperparameter grids.
inline constexpr double kInfiniteLambda = 1e12;

struct TrainOptions {
  double tol = 1e-10;
  int max_iters = 10000;
};

struct ModelState {
  Vector theta;
  double lambda = 0.0;
  Index n = 0;  // rows the model was fit on
  // ||grad F|| for smooth specs, ||theta - prox_I(theta - grad)|| otherwise.
  double optimality_residual = 0.0;
  int iterations = 0;
  ObjectiveSpec spec;
};

// First-order optimality residual of theta on the given rows.
double OptimalityResidual(const Dataset& data, std::span<const Index> rows,
                          const ObjectiveSpec& spec, const Vector& theta);

// Minimizes (1/|rows|) sum_rows l + lambda pi from theta = 0. Smooth specs use
// damped Newton with Armijo backtracking; non-smooth specs use proximal Newton
// (prox step under the local loss Hessian) with the same line search.
// Throws DidNotConverge or NotPositiveDefinite.
ModelState TrainOnRows(const Dataset& data, std::span<const Index> rows,
                       const ObjectiveSpec& spec, TrainOptions options = {});

// Trains on data.train_ids().
ModelState Train(const Dataset& data, const ObjectiveSpec& spec,
                 TrainOptions options = {});

// Retrains on data.train_ids() minus `excluded`. Throws UnknownId for ids
// outside the training split and AllDataDeleted if nothing remains.
ModelState TrainLeaveOut(const Dataset& data, const ObjectiveSpec& spec,
                         std::span<const Index> excluded,
                         TrainOptions options = {});

// Training ids with `excluded` removed (same error contract as above).
std::vector<Index> RemainingIds(const Dataset& data,
                                std::span<const Index> excluded);

struct CvResult {
  std::vector<double> lambdas;
  std::vector<double> errors;  // exact leave-one-out CV error per lambda
  double selected_lambda = 0.0;
  std::string tie_break = "largest-lambda";
};

// Exact leave-one-out CV over the grid; spec.lambda is overwritten per grid
// point. Ties (relative 1e-12) go to the larger lambda.
CvResult CvSelect(const Dataset& data, const ObjectiveSpec& spec_template,
                  std::span<const double> lambda_grid,
                  TrainOptions options = {});

}  // namespace ijunlearn

#endif  // IJUNLEARN_TRAINER_H_
