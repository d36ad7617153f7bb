// Copyright 2026 The cover-sampler Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cover_sampler/error.hpp"

namespace cover_sampler {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kInfeasibleInstance: return "InfeasibleInstance";
    case ErrorCode::kEmptyEdge: return "EmptyEdge";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kDuplicate: return "Duplicate";
    case ErrorCode::kInvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
    case ErrorCode::kInsufficientTrials: return "InsufficientTrials";
    case ErrorCode::kTooLarge: return "TooLarge";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace cover_sampler
