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

#include "ijunlearn/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "ijunlearn/error.h"

namespace ijunlearn {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<Index> SortedUnique(std::vector<Index> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace

Dataset::Dataset(Matrix features, Vector targets, std::vector<Index> train_ids,
                 std::vector<Index> test_ids)
    : features_(std::move(features)), targets_(std::move(targets)) {
  const Index n = features_.rows();
  if (n < 2 || features_.cols() < 1) {
    throw Error(ErrorCode::kBadShape, "dataset needs n >= 2 rows and d >= 1");
  }
  if (targets_.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "one target per row required");
  }
  if (!features_.allFinite() || !targets_.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "dataset contains NaN or Inf");
  }
  if (train_ids.empty()) {
    train_ids.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) train_ids[static_cast<std::size_t>(i)] = i;
  }
  train_ids_ = SortedUnique(std::move(train_ids));
  test_ids_ = SortedUnique(std::move(test_ids));
  is_train_.assign(static_cast<std::size_t>(n), false);
  for (Index id : train_ids_) {
    if (id < 0 || id >= n) throw Error(ErrorCode::kUnknownId, "train id out of range");
    is_train_[static_cast<std::size_t>(id)] = true;
  }
  for (Index id : test_ids_) {
    if (id < 0 || id >= n) throw Error(ErrorCode::kUnknownId, "test id out of range");
    if (is_train_[static_cast<std::size_t>(id)]) {
      throw Error(ErrorCode::kInvalidArgument, "train and test splits overlap");
    }
  }
}

bool Dataset::is_train_id(Index id) const {
  return id >= 0 && id < size() && is_train_[static_cast<std::size_t>(id)];
}

bool Dataset::has_binary_labels() const {
  return (targets_.array().abs() == 1.0).all();
}

Dataset Dataset::WithRandomSplit(double test_fraction,
                                 std::uint64_t seed) const {
  if (!(test_fraction >= 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "test fraction must be in [0, 1)");
  }
  std::vector<Index> ids(static_cast<std::size_t>(size()));
  for (Index i = 0; i < size(); ++i) ids[static_cast<std::size_t>(i)] = i;
  SeededShuffle(ids, seed);
  const auto n_test = static_cast<std::size_t>(
      static_cast<double>(size()) * test_fraction);
  if (ids.size() - n_test < 2) {
    throw Error(ErrorCode::kBadShape, "split leaves fewer than 2 training rows");
  }
  std::vector<Index> test(ids.begin(), ids.begin() + n_test);
  std::vector<Index> train(ids.begin() + n_test, ids.end());
  return Dataset(features_, targets_, std::move(train), std::move(test));
}

Dataset ParseCsv(const std::string& text, int label_column, bool has_header,
                 const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view trimmed = Trim(line);
    if (trimmed.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    std::vector<double> values;
    std::size_t column = 0;
    std::string_view rest = trimmed;
    for (;;) {
      ++column;
      const auto comma = rest.find(',');
      const std::string_view field = Trim(rest.substr(0, comma));
      double value = 0.0;
      const auto* begin = field.data();
      const auto* end = field.data() + field.size();
      const auto [ptr, ec] = std::from_chars(begin, end, value);
      if (field.empty() || ec != std::errc() || ptr != end ||
          !std::isfinite(value)) {
        throw Error(ErrorCode::kParseError,
                    source + ": line " + std::to_string(line_no) + ", column " +
                        std::to_string(column) + ": '" + std::string(field) +
                        "' is not a number");
      }
      values.push_back(value);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (width == 0) {
      width = values.size();
    } else if (values.size() != width) {
      throw Error(ErrorCode::kRaggedRows,
                  source + ": line " + std::to_string(line_no) + " has " +
                      std::to_string(values.size()) + " fields, expected " +
                      std::to_string(width));
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw Error(ErrorCode::kEmptyDataset, source + ": no rows");
  if (width < 2) {
    throw Error(ErrorCode::kBadShape, source + ": need a label and a feature");
  }
  const int w = static_cast<int>(width);
  const int label = label_column < 0 ? w + label_column : label_column;
  if (label < 0 || label >= w) {
    throw Error(ErrorCode::kInvalidArgument,
                "label column " + std::to_string(label_column) +
                    " outside a row of width " + std::to_string(w));
  }

  const auto n = static_cast<Index>(rows.size());
  Matrix x(n, w - 1);
  Vector y(n);
  bool zero_one = true;
  bool plus_minus = true;
  for (Index i = 0; i < n; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    Index col = 0;
    for (int j = 0; j < w; ++j) {
      if (j == label) continue;
      x(i, col++) = r[static_cast<std::size_t>(j)];
    }
    const double v = r[static_cast<std::size_t>(label)];
    y(i) = v;
    zero_one = zero_one && (v == 0.0 || v == 1.0);
    plus_minus = plus_minus && (v == -1.0 || v == 1.0);
  }
  if (!zero_one && !plus_minus) {
    throw Error(ErrorCode::kNonBinaryLabels,
                source + ": labels must be {0,1} or {-1,+1}");
  }
  if (zero_one) y = (2.0 * y.array() - 1.0).matrix();
  return Dataset(std::move(x), std::move(y));
}

Dataset LoadCsv(const std::string& path, int label_column, bool has_header) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseCsv(buffer.str(), label_column, has_header, path);
}

Dataset SynthGaussianBlobs(Index n, Index d, double separation,
                           std::uint64_t seed) {
  if (n < 2 || n % 2 != 0 || d < 1 || !(separation >= 0.0)) {
    throw Error(ErrorCode::kBadShape,
                "blobs need even n >= 2, d >= 1 and separation >= 0");
  }
  const Vector noise = GaussianSample(1.0, n * d, MixSeed(seed, 0));
  Matrix x = Eigen::Map<const Matrix>(noise.data(), n, d);
  Vector y(n);
  for (Index i = 0; i < n; ++i) {
    y(i) = i < n / 2 ? 1.0 : -1.0;
    x(i, 0) += y(i) * separation / 2.0;
  }
  Dataset all(std::move(x), std::move(y));
  return all.WithRandomSplit(0.2, MixSeed(seed, 1));
}

double Accuracy(const Dataset& data, std::span<const Index> ids,
                const Vector& theta) {
  if (ids.empty()) return 0.0;
  if (theta.size() != data.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "theta does not match dataset");
  }
  std::size_t correct = 0;
  for (Index id : ids) {
    const double margin = data.row(id).dot(theta);
    const double predicted = margin >= 0.0 ? 1.0 : -1.0;
    if (predicted == data.target(id)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(ids.size());
}

}  // namespace ijunlearn
