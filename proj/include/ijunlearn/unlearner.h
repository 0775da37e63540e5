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

#ifndef IJUNLEARN_UNLEARNER_H_
#define IJUNLEARN_UNLEARNER_H_

// Online removal by the infinitesimal jackknife (IJ), the batch Newton-step
// removal (TA), and the noise / capacity / risk calculators behind them.
//
// IJ factorizes one Hessian at the trained model and answers every later
// request with a solve against that factor:
//
//   smooth pi:     theta_bar <- theta_bar + (1/n) H_f^{-1} g_j
//   non-smooth pi: acc       <- acc + (1/n) H_l^{-1} grad l(z_j, theta_hat)
//                  theta_bar  = prox^{H_l}_{lambda' pi}(acc + offset)
//
// and publishes theta_bar + N(0, c^2 I). H_f is the mean Hessian of
// f = l + lambda pi, H_l that of the loss alone, and all gradients are taken
// at the trained model theta_hat.
//
// UpdateRule::kStationary (default) makes the step a Newton / proximal-Newton
// step on the exact leave-U-out objective: g_j = grad l + lambda grad pi,
// offset = -H_l^{-1} grad L_n(theta_hat) and lambda' = lambda (n - m) / n.
// Without these terms the update misses the regularizer's share of the
// leave-out gradient and its error is O(lambda m / n) instead of O(m^2/n^2).
// UpdateRule::kAsPrinted drops them: g_j = grad l, offset = 0, lambda' =
// lambda. Both rules keep the accumulator acc = theta_hat + (1/n) H^{-1}
// sum_U g and therefore satisfy batch/stream equivalence.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ijunlearn/dataset.h"
#include "ijunlearn/numkit.h"
#include "ijunlearn/objectives.h"
#include "ijunlearn/prox.h"
#include "ijunlearn/trainer.h"

namespace ijunlearn {

enum class Branch { kSmooth, kNonSmooth };
enum class UpdateRule { kStationary, kAsPrinted };
enum class NoiseMode { kFormula, kFixed, kDisabled };
enum class CapacityPolicy { kWarn, kError };

struct PrivacyBudget {
  double epsilon = 1.0;
  double delta = 1e-5;

  // Throws BadBudget unless epsilon > 0 and 0 < delta < 1.
  void Validate() const;
  // sqrt(2 ln(1.25 / delta)) / epsilon
  double GaussianFactor() const;
};

struct UnlearnerOptions {
  UpdateRule rule = UpdateRule::kStationary;
  NoiseMode noise = NoiseMode::kFormula;
  double fixed_noise_scale = 0.0;  // used with NoiseMode::kFixed
  CapacityPolicy capacity_policy = CapacityPolicy::kWarn;
  double capacity_gamma = 0.01;
  // Used only when the model's spec carries no constants.
  EstimateOptions estimate;
  ProxOptions prox;
};

struct RemovedModel {
  Vector noiseless;  // theta_bar
  Vector published;  // theta_bar + sigma
  double noise_scale = 0.0;
  Index deleted_count = 0;  // m after this removal
  bool capacity_warning = false;
};

// Noise standard deviation for the deletion that follows `m` earlier ones:
//   smooth:     (2m + 1)  (2 C L mu + M L) / (mu^2 n^2) * GaussianFactor
//   non-smooth: (m + 1)^2 (2 C L mu + M L) / (mu^2 n^2) * GaussianFactor
double NoiseScale(Branch branch, Index m, Index n,
                  const SmoothnessConstants& constants,
                  const PrivacyBudget& budget);

// Noise for a TA batch of size m: the leave-U-out proximity bound
// m^2 L (2 C mu + M L) / (mu^3 n^2) times GaussianFactor.
double TaNoiseScale(Index m, Index n, const SmoothnessConstants& constants,
                    const PrivacyBudget& budget);
inline constexpr std::string_view kTaNoiseExpression =
    "m^2*L*(2*C*mu + M*L)/(mu^3*n^2) * sqrt(2*ln(1.25/delta))/epsilon";

// floor(c n sqrt(eps) / (d ln(1/delta))^(1/4)) with
// c = min(1, gamma (mu^3 / ((2 C mu + M L) L^2) + mu / (4 L^2))).
// Throws OutOfRegime when eps > 1 or delta > 0.005.
Index CapacityLowerBound(Index n, Index d, double epsilon, double delta,
                         double gamma, const SmoothnessConstants& constants);

// (1 + sqrt(d) sqrt(2 ln(1.25/delta)) / eps) (2 C mu + M L) m^2 L^2 / (mu^3 n^2)
//   + 4 m L^2 / (mu n)
double GeneralizationBound(Index m, Index n, Index d, double epsilon,
                           double delta, const SmoothnessConstants& constants);

struct BatchStreamGap {
  double accumulator_gap = 0.0;  // max |streamed acc - batch acc|
  double output_gap = 0.0;       // max |streamed theta_bar - batch theta_bar|
};

class Unlearner {
 public:
  // Assembles H_f (smooth) or H_l (non-smooth) over the training rows at
  // model.theta and factorizes it. This is the only assembly and the only
  // factorization the unlearner ever performs.
  // Throws BranchMismatch, NotPositiveDefinite, ConstantsInvalid.
  static Unlearner Init(const Dataset& data, const ModelState& model,
                        PrivacyBudget budget, std::uint64_t seed,
                        Branch branch, UnlearnerOptions options = {});

  // Removes training row `id`. Throws AlreadyDeleted, UnknownId,
  // AllDataDeleted, and CapacityExhausted under CapacityPolicy::kError.
  RemovedModel DeleteOne(Index id);

  // Recomputes the batch formula over deleted_ids() and compares.
  BatchStreamGap CheckAgainstBatch() const;

  Branch branch() const { return branch_; }
  Index n() const { return n_; }
  Index deleted_count() const { return static_cast<Index>(deleted_.size()); }
  const std::vector<Index>& deleted_ids() const { return deleted_; }
  const Vector& reference() const { return reference_; }
  // theta_bar for smooth, the stored accumulator for non-smooth.
  const Vector& accumulator() const { return accumulator_; }
  const Vector& noiseless() const { return noiseless_; }
  const SmoothnessConstants& constants() const { return constants_; }
  bool constants_valid() const { return constants_valid_; }
  const PrivacyBudget& budget() const { return budget_; }

 private:
  Unlearner() = default;

  double EffectiveLambda(Index m_after) const;
  Vector ProxOutput(const Vector& accumulator, Index m_after) const;
  Index Column(Index id) const;

  Branch branch_ = Branch::kSmooth;
  UnlearnerOptions options_;
  ObjectiveSpec spec_;
  PrivacyBudget budget_;
  std::uint64_t seed_ = 0;
  Index n_ = 0;

  Vector reference_;
  std::optional<PdFactor> factor_;      // smooth branch
  std::optional<ProxMetric> metric_;    // non-smooth branch
  Vector offset_;                       // non-smooth prox anchor shift
  Matrix gradients_;                    // d x n_train, per training row
  std::vector<Index> column_of_;        // dataset id -> column, or -1

  Vector accumulator_;
  Vector noiseless_;
  std::vector<Index> deleted_;
  std::vector<bool> is_deleted_;
  SmoothnessConstants constants_;
  bool constants_valid_ = false;
};

struct TaOptions {
  UpdateRule rule = UpdateRule::kStationary;
  NoiseMode noise = NoiseMode::kFormula;
  double fixed_noise_scale = 0.0;
  // Falls back to the spec's constants, then to estimation at the model.
  std::optional<SmoothnessConstants> constants;
  EstimateOptions estimate;
  ProxOptions prox;
};

// Newton-step removal of the whole set `ids` from the trained model, using
// the Hessian over the remaining n - m rows (assembled and factorized on
// every call):
//   smooth:     theta_hat + (1/(n-m)) H_{-U}^{-1} sum_U g
//   non-smooth: prox^{H_{-U}}_{lambda pi}(theta_hat - H_{-U}^{-1} grad L_{-U})
// with g and the non-smooth anchor as for Unlearner under `rule`
// (kAsPrinted uses theta_hat + (1/(n-m)) H_{-U}^{-1} sum_U grad l).
RemovedModel TaBatchRemove(const Dataset& data, const ModelState& model,
                           std::span<const Index> ids,
                           const PrivacyBudget& budget, std::uint64_t seed,
                           Branch branch, TaOptions options = {});

}  // namespace ijunlearn

#endif  // IJUNLEARN_UNLEARNER_H_
