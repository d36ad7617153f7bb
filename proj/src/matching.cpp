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

#include "cover_sampler/matching.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

#include "cover_sampler/error.hpp"
#include "cover_sampler/schedule.hpp"

namespace cover_sampler {

MatchingResult hypergraph_matching(const Hypergraph& hg, double eps,
                                   Rng& rng) {
  validate_epsilon(eps);
  MatchingResult result;
  if (hg.num_edges() == 0) return result;
  const Schedule schedule = Schedule::outer(hg.max_degree(), eps);
  const std::size_t k = schedule.k();
  const AliasTable alias(schedule.bucket_distribution());

  const std::size_t m = hg.num_edges();
  std::vector<std::uint32_t> drawn(m);
  std::vector<std::size_t> offsets(k + 2, 0);
  for (auto& d : drawn) {
    d = static_cast<std::uint32_t>(alias.sample(rng));
    ++offsets[d + 1];
  }
  for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
  std::vector<EdgeId> by_step(m);
  {
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::size_t e = 0; e < m; ++e) {
      by_step[fill[drawn[e]]++] = static_cast<EdgeId>(e);
    }
  }

  auto& counters = result.counters;
  std::vector<std::uint8_t> removed(hg.num_vertices(), 0);
  std::vector<EdgeId> sampled;
  std::vector<std::uint32_t> step_of;  // parallel to `sampled`
  std::vector<EdgeId> batch;
  for (std::size_t step = k + 1; step-- > 0;) {
    ++counters.steps_executed;
    batch.clear();
    for (std::size_t x = offsets[step]; x < offsets[step + 1]; ++x) {
      const EdgeId e = by_step[x];
      ++counters.element_touches;
      bool live = true;
      for (VertexId v : hg.edge(e)) {
        ++counters.edge_touches;
        if (removed[v]) {
          live = false;
          break;
        }
      }
      if (live) batch.push_back(e);
    }
    for (EdgeId e : batch) {
      sampled.push_back(e);
      step_of.push_back(static_cast<std::uint32_t>(step));
      for (VertexId v : hg.edge(e)) removed[v] = 1;
    }
  }
  result.sampled = sampled.size();

  // Independence filter over all of C.
  constexpr std::uint32_t kUnused = UINT32_MAX;
  std::vector<std::uint32_t> first_user(hg.num_vertices(), kUnused);
  std::vector<std::uint8_t> conflicted(sampled.size(), 0);
  for (std::uint32_t x = 0; x < sampled.size(); ++x) {
    for (VertexId v : hg.edge(sampled[x])) {
      const std::uint32_t other = first_user[v];
      if (other == kUnused) {
        first_user[v] = x;
        continue;
      }
      if (step_of[other] != step_of[x]) {
        throw std::logic_error("sampled edges " +
                               std::to_string(sampled[other]) + " and " +
                               std::to_string(sampled[x]) +
                               " conflict across steps");
      }
      conflicted[other] = 1;
      conflicted[x] = 1;
    }
  }
  for (std::size_t x = 0; x < sampled.size(); ++x) {
    if (!conflicted[x]) result.matching.edges.push_back(sampled[x]);
  }
  return result;
}

double matching_eps_for_target(double target_eps, std::size_t rank) {
  validate_epsilon(target_eps);
  if (rank == 0) {
    throw Error(ErrorCode::kInvalidArgument, "rank must be at least 1");
  }
  return target_eps / static_cast<double>(rank);
}

MatchingCheck verify_matching(const Hypergraph& hg, const Matching& matching) {
  std::vector<std::uint8_t> used(hg.num_vertices(), 0);
  MatchingCheck check;
  for (EdgeId e : matching.edges) {
    if (e >= hg.num_edges()) {
      throw Error(ErrorCode::kOutOfRange,
                  "edge id " + std::to_string(e) + " outside [0, " +
                      std::to_string(hg.num_edges()) + ")");
    }
    for (VertexId v : hg.edge(e)) {
      if (used[v] && (!check.conflict || v < *check.conflict)) {
        check.conflict = v;
      }
      used[v] = 1;
    }
  }
  check.valid = !check.conflict.has_value();
  return check;
}

}  // namespace cover_sampler
