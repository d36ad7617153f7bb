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

#ifndef COVER_SAMPLER_TOOLS_CLI_HPP_
#define COVER_SAMPLER_TOOLS_CLI_HPP_

#include <iosfwd>

namespace cover_sampler::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;         // I/O, parse or argument errors
inline constexpr int kExitInvalid = 2;       // solver output failed verification
inline constexpr int kExitStatistical = 3;   // a lemma check failed

// Entry point of the cover_sampler binary, with injectable streams so that
// tests can drive it in-process.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace cover_sampler::cli

#endif  // COVER_SAMPLER_TOOLS_CLI_HPP_
