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

#ifndef COVER_SAMPLER_RNG_HPP_
#define COVER_SAMPLER_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>

namespace cover_sampler {

using Rng = std::mt19937_64;

// Seed of stream `stream` under master seed `master`: one splitmix64 finalizer
// round over master + (stream + 1) * golden-ratio increment.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

inline Rng make_stream(std::uint64_t master, std::uint64_t stream) {
  return Rng(derive_seed(master, stream));
}

// Uniform double in [0, 1) built from the top 53 bits of one engine output.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform double in (0, 1]; safe to pass to log().
inline double uniform_open_closed(Rng& rng) { return 1.0 - uniform01(rng); }

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Number of failures before the first success of a Bernoulli(p) sequence,
// given log1m_p = log(1 - p) < 0. Saturates instead of overflowing.
std::size_t geometric_skip(Rng& rng, double log1m_p);

}  // namespace cover_sampler

#endif  // COVER_SAMPLER_RNG_HPP_
