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

#ifndef IJUNLEARN_ERROR_H_
#define IJUNLEARN_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ijunlearn {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kNotPositiveDefinite,
  kNonFinite,
  kBadLabel,
  kNonSmoothRegularizer,
  kEmptyDataset,
  kConstantsInvalid,
  kDidNotConverge,
  kAllDataDeleted,
  kUnknownId,
  kBranchMismatch,
  kAlreadyDeleted,
  kCapacityExhausted,
  kBadBudget,
  kOutOfRegime,
  kBadN,
  kParseError,
  kRaggedRows,
  kNonBinaryLabels,
  kBadShape,
  kStreamTooLong,
  kIoError,
  kConfigError,
};

std::string_view ToString(ErrorCode code);

// True for codes that signal a numerical failure rather than bad input.
bool IsNumericalFailure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ijunlearn

#endif  // IJUNLEARN_ERROR_H_
