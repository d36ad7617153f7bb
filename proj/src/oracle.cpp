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

#include "cover_sampler/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>
#include <vector>

#include "cover_sampler/error.hpp"
#include "cover_sampler/parallel.hpp"
#include "cover_sampler/rng.hpp"
#include "cover_sampler/stats.hpp"

namespace cover_sampler {

namespace {

using Bits = std::vector<std::uint64_t>;

std::size_t popcount(const Bits& bits) {
  std::size_t n = 0;
  for (auto w : bits) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t overlap(const Bits& a, const Bits& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    n += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  }
  return n;
}

class CoverSearch {
 public:
  explicit CoverSearch(const SetCoverInstance& instance)
      : instance_(instance),
        words_((instance.num_elements() + 63) / 64),
        sets_(instance.num_sets(), Bits(words_, 0)) {
    for (SetId s = 0; s < instance.num_sets(); ++s) {
      for (ElementId t : instance.elements_of(s)) {
        sets_[s][t / 64] |= std::uint64_t{1} << (t % 64);
      }
    }
  }

  std::size_t solve() {
    best_ = greedy_cover(instance_).size();
    Bits uncovered(words_, 0);
    for (std::size_t t = 0; t < instance_.num_elements(); ++t) {
      uncovered[t / 64] |= std::uint64_t{1} << (t % 64);
    }
    search(uncovered, 0);
    return best_;
  }

 private:
  void search(const Bits& uncovered, std::size_t chosen) {
    const std::size_t left = popcount(uncovered);
    if (left == 0) {
      best_ = std::min(best_, chosen);
      return;
    }
    if (chosen + 1 >= best_) return;
    std::size_t widest = 0;
    for (const auto& s : sets_) widest = std::max(widest, overlap(s, uncovered));
    if (chosen + (left + widest - 1) / widest >= best_) return;

    // Branch on the uncovered element contained in the fewest sets.
    ElementId pivot = 0;
    std::size_t pivot_degree = SIZE_MAX;
    for (std::size_t w = 0; w < words_; ++w) {
      for (std::uint64_t bits = uncovered[w]; bits != 0; bits &= bits - 1) {
        const auto t = static_cast<ElementId>(w * 64 + std::countr_zero(bits));
        const std::size_t d = instance_.sets_of(t).size();
        if (d < pivot_degree) {
          pivot_degree = d;
          pivot = t;
        }
      }
    }
    std::vector<std::pair<std::size_t, SetId>> options;
    for (SetId s : instance_.sets_of(pivot)) {
      options.emplace_back(overlap(sets_[s], uncovered), s);
    }
    std::sort(options.begin(), options.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    Bits next(words_);
    for (const auto& [gain, s] : options) {
      for (std::size_t w = 0; w < words_; ++w) {
        next[w] = uncovered[w] & ~sets_[s][w];
      }
      search(next, chosen + 1);
    }
  }

  const SetCoverInstance& instance_;
  std::size_t words_;
  std::vector<Bits> sets_;
  std::size_t best_ = 0;
};

class MatchingSearch {
 public:
  explicit MatchingSearch(const Hypergraph& hg)
      : hg_(hg), used_(hg.num_vertices(), 0) {}

  std::size_t solve() {
    search(0, 0);
    return best_;
  }

 private:
  void search(std::size_t next, std::size_t size) {
    best_ = std::max(best_, size);
    if (size + (hg_.num_edges() - next) <= best_) return;
    for (std::size_t e = next; e < hg_.num_edges(); ++e) {
      if (size + (hg_.num_edges() - e) <= best_) return;
      const auto verts = hg_.edge(static_cast<EdgeId>(e));
      const bool free = std::none_of(verts.begin(), verts.end(),
                                     [&](VertexId v) { return used_[v] != 0; });
      if (!free) continue;
      for (VertexId v : verts) used_[v] = 1;
      search(e + 1, size + 1);
      for (VertexId v : verts) used_[v] = 0;
    }
  }

  const Hypergraph& hg_;
  std::vector<std::uint8_t> used_;
  std::size_t best_ = 0;
};

RatioReport finish_report(const RunningStats& stats, std::size_t opt,
                          double bound, BoundSide side,
                          std::size_t invalid) {
  RatioReport report;
  report.trials = stats.count();
  report.mean_ratio = stats.mean();
  report.ci95 = stats.ci95();
  report.opt = opt;
  report.bound = bound;
  report.side = side;
  report.invalid_runs = invalid;
  const bool within = side == BoundSide::kUpper
                          ? report.mean_ratio - report.ci95 <= bound
                          : report.mean_ratio + report.ci95 >= bound;
  report.pass = invalid == 0 && within;
  return report;
}

}  // namespace

std::size_t exact_min_cover(const SetCoverInstance& instance) {
  if (instance.num_sets() > kMaxExactCoverSets) {
    throw Error(ErrorCode::kTooLarge,
                std::to_string(instance.num_sets()) +
                    " sets exceed the exact solver limit of " +
                    std::to_string(kMaxExactCoverSets));
  }
  if (instance.num_elements() == 0) return 0;
  return CoverSearch(instance).solve();
}

std::size_t exact_max_matching(const Hypergraph& hg) {
  if (hg.num_edges() > kMaxExactMatchingEdges) {
    throw Error(ErrorCode::kTooLarge,
                std::to_string(hg.num_edges()) +
                    " edges exceed the exact solver limit of " +
                    std::to_string(kMaxExactMatchingEdges));
  }
  return MatchingSearch(hg).solve();
}

Cover greedy_cover(const SetCoverInstance& instance) {
  std::vector<std::size_t> gain(instance.num_sets());
  for (SetId s = 0; s < instance.num_sets(); ++s) {
    gain[s] = instance.elements_of(s).size();
  }
  std::vector<std::uint8_t> covered(instance.num_elements(), 0);
  std::size_t left = instance.num_elements();
  Cover cover;
  while (left > 0) {
    // max_element returns the first maximum, i.e. the lowest id.
    const auto best = static_cast<SetId>(
        std::max_element(gain.begin(), gain.end()) - gain.begin());
    cover.sets.push_back(best);
    for (ElementId t : instance.elements_of(best)) {
      if (covered[t]) continue;
      covered[t] = 1;
      --left;
      for (SetId s : instance.sets_of(t)) --gain[s];
    }
  }
  return cover;
}

double harmonic(std::size_t d) {
  if (d == 0) {
    throw Error(ErrorCode::kInvalidArgument, "harmonic number needs d >= 1");
  }
  double h = 0.0;
  for (std::size_t i = d; i >= 1; --i) h += 1.0 / static_cast<double>(i);
  return h;
}

RatioReport measure_ratio(const CoverSolver& solver,
                          const SetCoverInstance& instance, double eps,
                          std::size_t trials, std::uint64_t seed,
                          double bound) {
  const std::size_t opt = exact_min_cover(instance);
  std::vector<double> ratios(trials);
  std::vector<std::uint8_t> invalid(trials, 0);
  parallel_for(trials, [&](std::size_t t) {
    Rng rng = make_stream(seed, t);
    const SolveResult res = solver(instance, eps, rng);
    invalid[t] = verify_cover(instance, res.cover).valid ? 0 : 1;
    ratios[t] = opt == 0 ? (res.cover.size() == 0 ? 1.0 : 0.0)
                         : static_cast<double>(res.cover.size()) /
                               static_cast<double>(opt);
  });
  RunningStats stats;
  for (double r : ratios) stats.add(r);
  return finish_report(stats, opt, bound, BoundSide::kUpper,
                       static_cast<std::size_t>(std::accumulate(
                           invalid.begin(), invalid.end(), std::size_t{0})));
}

RatioReport measure_matching_ratio(const MatchingSolver& solver,
                                   const Hypergraph& hg, double eps,
                                   std::size_t trials, std::uint64_t seed,
                                   double bound) {
  const std::size_t opt = exact_max_matching(hg);
  std::vector<double> ratios(trials);
  std::vector<std::uint8_t> invalid(trials, 0);
  parallel_for(trials, [&](std::size_t t) {
    Rng rng = make_stream(seed, t);
    const MatchingResult res = solver(hg, eps, rng);
    invalid[t] = verify_matching(hg, res.matching).valid ? 0 : 1;
    ratios[t] = opt == 0 ? 1.0
                         : static_cast<double>(res.matching.size()) /
                               static_cast<double>(opt);
  });
  RunningStats stats;
  for (double r : ratios) stats.add(r);
  return finish_report(stats, opt, bound, BoundSide::kLower,
                       static_cast<std::size_t>(std::accumulate(
                           invalid.begin(), invalid.end(), std::size_t{0})));
}

}  // namespace cover_sampler
