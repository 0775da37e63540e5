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

#include "ijunlearn/stream.h"

#include <random>
#include <unordered_set>

#include "ijunlearn/error.h"
#include "ijunlearn/numkit.h"

namespace ijunlearn {
namespace {

void CheckLength(Index length, Index n_train) {
  if (length < 0) {
    throw Error(ErrorCode::kInvalidArgument, "stream length must be >= 0");
  }
  if (length >= n_train) {
    throw Error(ErrorCode::kStreamTooLong,
                "stream of " + std::to_string(length) +
                    " deletions needs more than " + std::to_string(n_train) +
                    " training rows");
  }
}

std::vector<Index> Uniform(const StreamPolicy& policy, const Dataset& data) {
  const auto train = data.train_ids();
  std::vector<Index> pool(train.begin(), train.end());
  SeededShuffle(pool, policy.seed);
  pool.resize(static_cast<std::size_t>(policy.length));
  return pool;
}

std::vector<Index> Biased(const StreamPolicy& policy, const Dataset& data) {
  if (!(policy.p_positive >= 0.0 && policy.p_positive <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "p_positive must lie in [0, 1]");
  }
  if (!data.has_binary_labels()) {
    throw Error(ErrorCode::kNonBinaryLabels,
                "label-biased streams need +-1 labels");
  }
  std::vector<Index> positives;
  std::vector<Index> negatives;
  for (Index id : data.train_ids()) {
    (data.target(id) > 0.0 ? positives : negatives).push_back(id);
  }
  SeededShuffle(positives, MixSeed(policy.seed, 1));
  SeededShuffle(negatives, MixSeed(policy.seed, 2));

  std::mt19937_64 engine(MixSeed(policy.seed, 3));
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(policy.length));
  std::size_t next_pos = 0;
  std::size_t next_neg = 0;
  while (static_cast<Index>(out.size()) < policy.length) {
    const bool pos_left = next_pos < positives.size();
    const bool neg_left = next_neg < negatives.size();
    bool take_positive = pos_left;
    if (pos_left && neg_left) {
      take_positive = UniformUnit(engine) < policy.p_positive;
    }
    out.push_back(take_positive ? positives[next_pos++] : negatives[next_neg++]);
  }
  return out;
}

std::vector<Index> Explicit(const StreamPolicy& policy, const Dataset& data) {
  std::unordered_set<Index> seen;
  for (Index id : policy.ids) {
    if (!data.is_train_id(id)) {
      throw Error(ErrorCode::kUnknownId,
                  "id " + std::to_string(id) + " is not a training row");
    }
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "id " + std::to_string(id) + " appears twice in the stream");
    }
  }
  return policy.ids;
}

}  // namespace

StreamPolicy StreamPolicy::UniformRandom(Index length, std::uint64_t seed) {
  StreamPolicy p;
  p.kind = StreamKind::kUniformRandom;
  p.length = length;
  p.seed = seed;
  return p;
}

StreamPolicy StreamPolicy::LabelBiased(double p_positive, Index length,
                                       std::uint64_t seed) {
  StreamPolicy p;
  p.kind = StreamKind::kLabelBiased;
  p.length = length;
  p.seed = seed;
  p.p_positive = p_positive;
  return p;
}

StreamPolicy StreamPolicy::ExplicitList(std::vector<Index> ids) {
  StreamPolicy p;
  p.kind = StreamKind::kExplicitList;
  p.length = static_cast<Index>(ids.size());
  p.ids = std::move(ids);
  return p;
}

std::string ToString(StreamKind kind) {
  switch (kind) {
    case StreamKind::kUniformRandom: return "uniform";
    case StreamKind::kLabelBiased: return "biased";
    case StreamKind::kExplicitList: return "explicit";
  }
  return "unknown";
}

StreamKind ParseStreamKind(const std::string& name) {
  if (name == "uniform") return StreamKind::kUniformRandom;
  if (name == "biased") return StreamKind::kLabelBiased;
  if (name == "explicit") return StreamKind::kExplicitList;
  throw Error(ErrorCode::kInvalidArgument, "unknown stream kind '" + name + "'");
}

std::vector<Index> MakeStream(const StreamPolicy& policy, const Dataset& data) {
  const auto n_train = static_cast<Index>(data.train_ids().size());
  const Index length = policy.kind == StreamKind::kExplicitList
                           ? static_cast<Index>(policy.ids.size())
                           : policy.length;
  CheckLength(length, n_train);
  switch (policy.kind) {
    case StreamKind::kUniformRandom: return Uniform(policy, data);
    case StreamKind::kLabelBiased: return Biased(policy, data);
    case StreamKind::kExplicitList: return Explicit(policy, data);
  }
  return {};
}

}  // namespace ijunlearn
