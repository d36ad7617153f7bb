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

#ifndef COVER_SAMPLER_ORACLE_HPP_
#define COVER_SAMPLER_ORACLE_HPP_

#include <cstddef>
#include <cstdint>

#include "cover_sampler/cover.hpp"
#include "cover_sampler/instance.hpp"
#include "cover_sampler/matching.hpp"

namespace cover_sampler {

inline constexpr std::size_t kMaxExactCoverSets = 30;
inline constexpr std::size_t kMaxExactMatchingEdges = 25;

// Minimum cover size by branch and bound. Throws kTooLarge above
// kMaxExactCoverSets sets.
std::size_t exact_min_cover(const SetCoverInstance& instance);

// Maximum matching size by exhaustive search with pruning. Throws kTooLarge
// above kMaxExactMatchingEdges edges.
std::size_t exact_max_matching(const Hypergraph& hg);

// Classic greedy: repeatedly add the set covering the most uncovered
// elements, lowest id on ties.
Cover greedy_cover(const SetCoverInstance& instance);

// H_d = 1 + 1/2 + ... + 1/d; throws kInvalidArgument for d = 0.
double harmonic(std::size_t d);

enum class BoundSide {
  kUpper,  // minimization: pass iff mean - ci95 <= bound
  kLower,  // maximization: pass iff mean + ci95 >= bound
};

struct RatioReport {
  std::size_t trials = 0;
  double mean_ratio = 0.0;
  double ci95 = 0.0;
  std::size_t opt = 0;
  double bound = 0.0;
  BoundSide side = BoundSide::kUpper;
  std::size_t invalid_runs = 0;
  bool pass = false;
};

// Runs the solver `trials` times, run t on stream (seed, t), and compares
// |C| / OPT against `bound`. Invalid covers count as failures.
RatioReport measure_ratio(const CoverSolver& solver,
                          const SetCoverInstance& instance, double eps,
                          std::size_t trials, std::uint64_t seed,
                          double bound);

// Same for matchings with |M| / OPT on the lower side. A zero-size matching
// contributes ratio 0.
RatioReport measure_matching_ratio(const MatchingSolver& solver,
                                   const Hypergraph& hg, double eps,
                                   std::size_t trials, std::uint64_t seed,
                                   double bound);

}  // namespace cover_sampler

#endif  // COVER_SAMPLER_ORACLE_HPP_
