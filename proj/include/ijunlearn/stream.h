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

#ifndef IJUNLEARN_STREAM_H_
#define IJUNLEARN_STREAM_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ijunlearn/dataset.h"

namespace ijunlearn {

enum class StreamKind { kUniformRandom, kLabelBiased, kExplicitList };

// Order in which training rows ask to be deleted.
struct StreamPolicy {
  StreamKind kind = StreamKind::kUniformRandom;
  Index length = 0;            // ignored for kExplicitList
  std::uint64_t seed = 0;
  double p_positive = 0.5;     // kLabelBiased only
  std::vector<Index> ids;      // kExplicitList only

  static StreamPolicy UniformRandom(Index length, std::uint64_t seed);
  static StreamPolicy LabelBiased(double p_positive, Index length,
                                  std::uint64_t seed);
  static StreamPolicy ExplicitList(std::vector<Index> ids);
};

std::string ToString(StreamKind kind);
// "uniform", "biased" or "explicit"; throws InvalidArgument otherwise.
StreamKind ParseStreamKind(const std::string& name);

// Draws distinct training ids without replacement. kLabelBiased picks a +1
// row with probability p_positive and a -1 row otherwise, falling back to the
// other class once one is exhausted. Throws StreamTooLong unless the stream
// is shorter than the training split, InvalidArgument for bad policies and
// UnknownId / InvalidArgument for bad explicit lists.
std::vector<Index> MakeStream(const StreamPolicy& policy, const Dataset& data);

}  // namespace ijunlearn

#endif  // IJUNLEARN_STREAM_H_
