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

#ifndef IJUNLEARN_DATASET_H_
#define IJUNLEARN_DATASET_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ijunlearn/numkit.h"

namespace ijunlearn {

// Immutable feature matrix plus targets. Row i has the stable id i. Targets
// are arbitrary reals (squared loss) or +-1 labels (logistic loss).
class Dataset {
 public:
  // Empty train/test id lists mean "every row trains, nothing tests".
  Dataset(Matrix features, Vector targets, std::vector<Index> train_ids = {},
          std::vector<Index> test_ids = {});

  Index size() const { return features_.rows(); }
  Index dim() const { return features_.cols(); }
  const Matrix& features() const { return features_; }
  const Vector& targets() const { return targets_; }
  auto row(Index id) const { return features_.row(id).transpose(); }
  double target(Index id) const { return targets_(id); }

  std::span<const Index> train_ids() const { return train_ids_; }
  std::span<const Index> test_ids() const { return test_ids_; }
  bool has_test_split() const { return !test_ids_.empty(); }
  bool is_train_id(Index id) const;

  // True when every target is exactly -1 or +1.
  bool has_binary_labels() const;

  // Returns a copy with a seeded random train/test split.
  Dataset WithRandomSplit(double test_fraction, std::uint64_t seed) const;

 private:
  Matrix features_;
  Vector targets_;
  std::vector<Index> train_ids_;
  std::vector<Index> test_ids_;
  std::vector<bool> is_train_;
};

// Reads comma-separated numeric rows. `label_column` may be negative to count
// from the end (-1 is the last column). Labels {0,1} become {-1,+1}.
Dataset LoadCsv(const std::string& path, int label_column, bool has_header);

// Same, from in-memory text; `source` names the input in error messages.
Dataset ParseCsv(const std::string& text, int label_column, bool has_header,
                 const std::string& source = "<memory>");

// Two isotropic unit-variance Gaussian classes centred at +-(separation/2) e1,
// n/2 rows each, with a seeded 80/20 train/test split.
Dataset SynthGaussianBlobs(Index n, Index d, double separation,
                           std::uint64_t seed);

// Fraction of `ids` whose sign(x^T theta) matches the label (ties count as +1).
double Accuracy(const Dataset& data, std::span<const Index> ids,
                const Vector& theta);

}  // namespace ijunlearn

#endif  // IJUNLEARN_DATASET_H_
