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

#include "ijunlearn/error.h"

namespace ijunlearn {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kBadLabel: return "BadLabel";
    case ErrorCode::kNonSmoothRegularizer: return "NonSmoothRegularizer";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kConstantsInvalid: return "ConstantsInvalid";
    case ErrorCode::kDidNotConverge: return "DidNotConverge";
    case ErrorCode::kAllDataDeleted: return "AllDataDeleted";
    case ErrorCode::kUnknownId: return "UnknownId";
    case ErrorCode::kBranchMismatch: return "BranchMismatch";
    case ErrorCode::kAlreadyDeleted: return "AlreadyDeleted";
    case ErrorCode::kCapacityExhausted: return "CapacityExhausted";
    case ErrorCode::kBadBudget: return "BadBudget";
    case ErrorCode::kOutOfRegime: return "OutOfRegime";
    case ErrorCode::kBadN: return "BadN";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kRaggedRows: return "RaggedRows";
    case ErrorCode::kNonBinaryLabels: return "NonBinaryLabels";
    case ErrorCode::kBadShape: return "BadShape";
    case ErrorCode::kStreamTooLong: return "StreamTooLong";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

bool IsNumericalFailure(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotPositiveDefinite:
    case ErrorCode::kNonFinite:
    case ErrorCode::kConstantsInvalid:
    case ErrorCode::kDidNotConverge:
    case ErrorCode::kCapacityExhausted:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ToString(code)) + ": " + message),
      code_(code) {}

}  // namespace ijunlearn
