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

#ifndef COVER_SAMPLER_MATCHING_HPP_
#define COVER_SAMPLER_MATCHING_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "cover_sampler/cover.hpp"
#include "cover_sampler/instance.hpp"
#include "cover_sampler/rng.hpp"

namespace cover_sampler {

struct Matching {
  std::vector<EdgeId> edges;
  std::size_t size() const { return edges.size(); }
};

struct MatchingResult {
  Matching matching;
  CostCounters counters;  // element touches = edge visits
  std::size_t sampled = 0;  // |C|, edges sampled before the filter
};

// Sampling-based hypergraph matching over the schedule for the maximum
// vertex degree: live edges are sampled with probability p_i, every vertex
// of a sampled edge is removed, and at the end the sampled edges that share
// a vertex with another sampled edge are dropped. Runs on fixed randomness
// (one upfront step draw per edge). Throws std::logic_error if two
// conflicting sampled edges come from different steps, which the vertex
// removal rules out.
MatchingResult hypergraph_matching(const Hypergraph& hg, double eps, Rng& rng);

// eps to run with for a (1 - target_eps) / h guarantee on rank-h inputs.
double matching_eps_for_target(double target_eps, std::size_t rank);

struct MatchingCheck {
  bool valid = false;
  std::optional<VertexId> conflict;  // lowest vertex used twice
};

// Throws kOutOfRange for edge ids outside the hypergraph.
MatchingCheck verify_matching(const Hypergraph& hg, const Matching& matching);

using MatchingSolver =
    std::function<MatchingResult(const Hypergraph&, double eps, Rng& rng)>;

}  // namespace cover_sampler

#endif  // COVER_SAMPLER_MATCHING_HPP_
