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

#include "cover_sampler/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cover_sampler {

std::size_t worker_count() {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("COVER_SAMPLER_THREADS")) {
    try {
      const long requested = std::stol(env);
      if (requested > 0) {
        return std::min<std::size_t>(static_cast<std::size_t>(requested), hw);
      }
    } catch (const std::exception&) {
      // Unparseable values fall back to the hardware default.
    }
  }
  return hw;
}

}  // namespace cover_sampler
