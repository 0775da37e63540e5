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

#include <algorithm>
#include <cmath>
#include <string>

#include "ijunlearn/error.h"

namespace ijunlearn {
namespace {

void CheckCounts(Index m, Index n) {
  if (m < 0 || n < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need m >= 0 and n >= 1");
  }
}

// (2 C mu + M L) L, the numerator shared by every calibration formula.
double CurvatureTerm(const SmoothnessConstants& k) {
  return (2.0 * k.C * k.mu + k.M * k.L) * k.L;
}

std::vector<Index> Deduplicate(std::span<const Index> ids) {
  std::vector<Index> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double NoiseFor(NoiseMode mode, double fixed, double formula_value) {
  switch (mode) {
    case NoiseMode::kFormula: return formula_value;
    case NoiseMode::kFixed: return fixed;
    case NoiseMode::kDisabled: return 0.0;
  }
  return 0.0;
}

}  // namespace

void PrivacyBudget::Validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kBadBudget, "epsilon must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kBadBudget, "delta must lie in (0, 1)");
  }
}

double PrivacyBudget::GaussianFactor() const {
  Validate();
  // delta < 1 < 1.25, so the logarithm is strictly positive.
  return std::sqrt(2.0 * std::log(1.25 / delta)) / epsilon;
}

double NoiseScale(Branch branch, Index m, Index n,
                  const SmoothnessConstants& constants,
                  const PrivacyBudget& budget) {
  const double factor = budget.GaussianFactor();
  constants.Validate();
  CheckCounts(m, n);
  const double k = static_cast<double>(m);
  const double prefactor =
      branch == Branch::kSmooth ? 2.0 * k + 1.0 : (k + 1.0) * (k + 1.0);
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  const double mu = constants.mu;
  return prefactor *
         (2.0 * constants.C * constants.L * mu + constants.M * constants.L) /
         (mu * mu * nn) * factor;
}

double TaNoiseScale(Index m, Index n, const SmoothnessConstants& constants,
                    const PrivacyBudget& budget) {
  const double factor = budget.GaussianFactor();
  constants.Validate();
  CheckCounts(m, n);
  const double k = static_cast<double>(m);
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  const double mu = constants.mu;
  return k * k * CurvatureTerm(constants) / (mu * mu * mu * nn) * factor;
}

Index CapacityLowerBound(Index n, Index d, double epsilon, double delta,
                         double gamma, const SmoothnessConstants& constants) {
  PrivacyBudget{epsilon, delta}.Validate();
  if (epsilon > 1.0 || delta > 0.005) {
    throw Error(ErrorCode::kOutOfRegime,
                "capacity bound holds only for eps <= 1 and delta <= 0.005");
  }
  if (!(gamma >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must be >= 0");
  }
  if (n < 1 || d < 1) throw Error(ErrorCode::kInvalidArgument, "n, d >= 1");
  constants.Validate();
  const double mu = constants.mu;
  const double l_sq = constants.L * constants.L;
  const double c = std::min(
      1.0, gamma * (mu * mu * mu / (CurvatureTerm(constants) * constants.L) +
                    mu / (4.0 * l_sq)));
  const double denom =
      std::pow(static_cast<double>(d) * std::log(1.0 / delta), 0.25);
  return static_cast<Index>(
      std::floor(c * static_cast<double>(n) * std::sqrt(epsilon) / denom));
}

double GeneralizationBound(Index m, Index n, Index d, double epsilon,
                           double delta, const SmoothnessConstants& constants) {
  const double factor = PrivacyBudget{epsilon, delta}.GaussianFactor();
  constants.Validate();
  CheckCounts(m, n);
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "d must be >= 1");
  const double k = static_cast<double>(m);
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  const double mu = constants.mu;
  const double l_sq = constants.L * constants.L;
  const double deletion_term =
      (2.0 * constants.C * mu + constants.M * constants.L) * k * k * l_sq /
      (mu * mu * mu * nn);
  return (1.0 + std::sqrt(static_cast<double>(d)) * factor) * deletion_term +
         4.0 * k * l_sq / (mu * static_cast<double>(n));
}

Unlearner Unlearner::Init(const Dataset& data, const ModelState& model,
                          PrivacyBudget budget, std::uint64_t seed,
                          Branch branch, UnlearnerOptions options) {
  const ObjectiveSpec& spec = model.spec;
  spec.Validate();
  if (!spec.reg.smooth() && branch == Branch::kSmooth) {
    throw Error(ErrorCode::kBranchMismatch,
                "non-smooth regularizer requires the non-smooth branch");
  }
  if (spec.reg.smooth() && branch == Branch::kNonSmooth) {
    throw Error(ErrorCode::kBranchMismatch,
                "smooth regularizer requires the smooth branch");
  }
  if (model.theta.size() != data.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "model does not match data");
  }
  const auto train = data.train_ids();
  if (static_cast<Index>(train.size()) != model.n) {
    throw Error(ErrorCode::kInvalidArgument,
                "model was not trained on this dataset's training split");
  }

  Unlearner u;
  u.branch_ = branch;
  u.options_ = options;
  u.spec_ = spec;
  u.budget_ = budget;
  u.seed_ = seed;
  u.n_ = model.n;
  u.reference_ = model.theta;
  if (options.noise == NoiseMode::kFormula) budget.Validate();
  if (options.noise == NoiseMode::kFixed && !(options.fixed_noise_scale >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "fixed noise scale must be >= 0");
  }

  u.constants_ = EstimateConstants(data, train, spec, model.theta, options.estimate);
  try {
    u.constants_.Validate();
    u.constants_valid_ = true;
  } catch (const Error&) {
    if (options.noise == NoiseMode::kFormula) throw;
  }

  const Index d = data.dim();
  if (branch == Branch::kSmooth) {
    u.factor_.emplace(Factorize(SmoothHessian(data, train, spec, model.theta)));
  } else {
    u.metric_.emplace(MeanLossHessian(data, train, spec.loss, model.theta));
    u.offset_ = Vector::Zero(d);
    if (options.rule == UpdateRule::kStationary) {
      u.offset_ = -Solve(u.metric_->factor(),
                         MeanLossGrad(data, train, spec.loss, model.theta));
    }
  }

  // Per-row gradients at the trained model: the only data statistic kept.
  u.gradients_.resize(d, static_cast<Index>(train.size()));
  u.column_of_.assign(static_cast<std::size_t>(data.size()), -1);
  const bool with_reg =
      branch == Branch::kSmooth && options.rule == UpdateRule::kStationary;
  for (std::size_t k = 0; k < train.size(); ++k) {
    const Index id = train[k];
    u.gradients_.col(static_cast<Index>(k)) =
        with_reg ? SampleObjectiveGrad(data, id, spec, model.theta)
                 : LossGrad(spec.loss, data.row(id), data.target(id), model.theta);
    u.column_of_[static_cast<std::size_t>(id)] = static_cast<Index>(k);
  }

  u.accumulator_ = model.theta;
  u.noiseless_ = model.theta;
  u.is_deleted_.assign(static_cast<std::size_t>(data.size()), false);
  return u;
}

Index Unlearner::Column(Index id) const {
  if (id < 0 || id >= static_cast<Index>(column_of_.size()) ||
      column_of_[static_cast<std::size_t>(id)] < 0) {
    throw Error(ErrorCode::kUnknownId,
                "id " + std::to_string(id) + " is not a training row");
  }
  return column_of_[static_cast<std::size_t>(id)];
}

double Unlearner::EffectiveLambda(Index m_after) const {
  if (options_.rule == UpdateRule::kAsPrinted) return spec_.lambda;
  return spec_.lambda * static_cast<double>(n_ - m_after) /
         static_cast<double>(n_);
}

Vector Unlearner::ProxOutput(const Vector& accumulator, Index m_after) const {
  return ProxSolve(*metric_, accumulator + offset_, EffectiveLambda(m_after),
                   spec_.reg, options_.prox);
}

RemovedModel Unlearner::DeleteOne(Index id) {
  const Index column = Column(id);
  if (is_deleted_[static_cast<std::size_t>(id)]) {
    throw Error(ErrorCode::kAlreadyDeleted,
                "id " + std::to_string(id) + " was already deleted");
  }
  const Index m = deleted_count();
  if (m + 1 >= n_) {
    throw Error(ErrorCode::kAllDataDeleted,
                "removing id " + std::to_string(id) + " would leave no data");
  }

  RemovedModel out;
  if (constants_valid_ && budget_.epsilon <= 1.0 && budget_.delta <= 0.005 &&
      budget_.epsilon > 0.0 && budget_.delta > 0.0) {
    const Index capacity =
        CapacityLowerBound(n_, reference_.size(), budget_.epsilon,
                           budget_.delta, options_.capacity_gamma, constants_);
    if (m + 1 >= capacity) {
      if (options_.capacity_policy == CapacityPolicy::kError) {
        throw Error(ErrorCode::kCapacityExhausted,
                    "deletion " + std::to_string(m + 1) +
                        " reaches the capacity bound " + std::to_string(capacity));
      }
      out.capacity_warning = true;
    }
  }

  const PdFactor& factor =
      branch_ == Branch::kSmooth ? *factor_ : metric_->factor();
  const Vector step =
      Solve(factor, gradients_.col(column)) / static_cast<double>(n_);
  Vector accumulator = accumulator_ + step;
  Vector noiseless = branch_ == Branch::kSmooth ? accumulator
                                                : ProxOutput(accumulator, m + 1);

  const double formula =
      options_.noise == NoiseMode::kFormula
          ? NoiseScale(branch_, m, n_, constants_, budget_)
          : 0.0;
  out.noise_scale =
      NoiseFor(options_.noise, options_.fixed_noise_scale, formula);
  const Vector sigma = GaussianSample(out.noise_scale, reference_.size(),
                                      MixSeed(seed_, static_cast<std::uint64_t>(m)));

  accumulator_ = std::move(accumulator);
  noiseless_ = std::move(noiseless);
  deleted_.push_back(id);
  is_deleted_[static_cast<std::size_t>(id)] = true;

  out.noiseless = noiseless_;
  out.published = noiseless_ + sigma;
  out.deleted_count = m + 1;
  RequireFinite(out.published, "published model");
  return out;
}

BatchStreamGap Unlearner::CheckAgainstBatch() const {
  BatchStreamGap gap;
  if (deleted_.empty()) return gap;
  Vector sum = Vector::Zero(reference_.size());
  for (Index id : deleted_) sum += gradients_.col(Column(id));
  const PdFactor& factor =
      branch_ == Branch::kSmooth ? *factor_ : metric_->factor();
  const Vector batch =
      reference_ + Solve(factor, sum) / static_cast<double>(n_);
  gap.accumulator_gap = (batch - accumulator_).cwiseAbs().maxCoeff();
  if (branch_ == Branch::kSmooth) {
    gap.output_gap = gap.accumulator_gap;
  } else {
    const Vector batch_output = ProxOutput(batch, deleted_count());
    gap.output_gap = (batch_output - noiseless_).cwiseAbs().maxCoeff();
  }
  return gap;
}

RemovedModel TaBatchRemove(const Dataset& data, const ModelState& model,
                           std::span<const Index> ids,
                           const PrivacyBudget& budget, std::uint64_t seed,
                           Branch branch, TaOptions options) {
  const ObjectiveSpec& spec = model.spec;
  spec.Validate();
  if ((branch == Branch::kSmooth) != spec.reg.smooth()) {
    throw Error(ErrorCode::kBranchMismatch,
                "branch does not match the regularizer's smoothness");
  }
  const std::vector<Index> removed = Deduplicate(ids);
  if (removed.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "nothing to remove");
  }
  const std::vector<Index> remaining = RemainingIds(data, removed);
  const auto m = static_cast<Index>(removed.size());
  const Index n = static_cast<Index>(data.train_ids().size());
  const double inv_rest = 1.0 / static_cast<double>(n - m);
  const Vector& theta_hat = model.theta;

  RemovedModel out;
  if (branch == Branch::kSmooth) {
    const PdFactor factor =
        Factorize(SmoothHessian(data, remaining, spec, theta_hat));
    Vector sum = SumLossGrad(data, removed, spec.loss, theta_hat);
    if (options.rule == UpdateRule::kStationary) {
      sum += static_cast<double>(m) * spec.lambda *
             RegGradSmooth(spec.reg, theta_hat);
    }
    out.noiseless = theta_hat + inv_rest * Solve(factor, sum);
  } else {
    const ProxMetric metric(
        MeanLossHessian(data, remaining, spec.loss, theta_hat));
    Vector anchor;
    if (options.rule == UpdateRule::kStationary) {
      anchor = theta_hat - Solve(metric.factor(),
                                 inv_rest * SumLossGrad(data, remaining,
                                                        spec.loss, theta_hat));
    } else {
      anchor = theta_hat +
               inv_rest * Solve(metric.factor(),
                                SumLossGrad(data, removed, spec.loss, theta_hat));
    }
    out.noiseless =
        ProxSolve(metric, anchor, spec.lambda, spec.reg, options.prox);
  }

  double formula = 0.0;
  if (options.noise == NoiseMode::kFormula) {
    SmoothnessConstants constants =
        options.constants ? *options.constants
                          : EstimateConstants(data, data.train_ids(), spec,
                                              theta_hat, options.estimate);
    formula = TaNoiseScale(m, n, constants, budget);
  }
  out.noise_scale = NoiseFor(options.noise, options.fixed_noise_scale, formula);
  out.published =
      out.noiseless + GaussianSample(out.noise_scale, theta_hat.size(),
                                     MixSeed(seed, static_cast<std::uint64_t>(m)));
  out.deleted_count = m;
  RequireFinite(out.published, "published model");
  return out;
}

}  // namespace ijunlearn
