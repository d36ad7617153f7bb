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

#include "cover_sampler/rng.hpp"

#include <cmath>
#include <limits>

namespace cover_sampler {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::size_t geometric_skip(Rng& rng, double log1m_p) {
  const double skip = std::floor(std::log(uniform_open_closed(rng)) / log1m_p);
  constexpr double kMax = 1e18;
  if (!(skip < kMax)) return static_cast<std::size_t>(kMax);
  return static_cast<std::size_t>(skip);
}

}  // namespace cover_sampler
