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

#ifndef COVER_SAMPLER_ERROR_HPP_
#define COVER_SAMPLER_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace cover_sampler {

enum class ErrorCode {
  kParse,
  kInfeasibleInstance,
  kEmptyEdge,
  kOutOfRange,
  kDuplicate,
  kInvalidEpsilon,
  kInvalidArgument,
  kInvalidConfig,
  kInsufficientSamples,
  kInsufficientTrials,
  kTooLarge,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type; `code()` lets callers
// (the CLI in particular) map failures to exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cover_sampler

#endif  // COVER_SAMPLER_ERROR_HPP_
