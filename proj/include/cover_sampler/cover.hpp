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

#ifndef COVER_SAMPLER_COVER_HPP_
#define COVER_SAMPLER_COVER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cover_sampler/instance.hpp"
#include "cover_sampler/rng.hpp"
#include "cover_sampler/schedule.hpp"

namespace cover_sampler {

struct Cover {
  std::vector<SetId> sets;  // duplicate-free, in the order they were added
  std::size_t size() const { return sets.size(); }
};

// Sequential work accounting. An edge touch is one read of an adjacency
// entry; element and set touches count visits to the element or set itself.
struct CostCounters {
  std::uint64_t element_touches = 0;
  std::uint64_t set_touches = 0;
  std::uint64_t edge_touches = 0;
  std::uint64_t steps_executed = 0;
  std::uint64_t rebucket_events = 0;

  CostCounters& operator+=(const CostCounters& other);
};

struct SolveResult {
  Cover cover;
  CostCounters counters;
};

struct SolverOptions {
  // Run the schedule at eps / 4 so that the (1 + 4 eps') factor of the
  // analysis becomes (1 + eps) for the caller's eps.
  bool calibrated = false;
};

// The eps the schedule actually runs with. Validates the caller's eps.
double schedule_eps(double eps, const SolverOptions& options);

// Online f-approximation: at step i = k..0 every live element is sampled
// with probability p_i, and all sets containing a sampled element join the
// cover together with everything they cover.
SolveResult f_approx_online(const SetCoverInstance& instance, double eps,
                            Rng& rng, const SolverOptions& options = {});

// Same process with the randomness fixed upfront: each element draws the
// step at which it would first be sampled from the bucket distribution, and
// a single sweep over the buckets processes every element at most once.
SolveResult f_approx_bucketed(const SetCoverInstance& instance, double eps,
                              Rng& rng, const SolverOptions& options = {});

// Step-by-step driver of the bucketed f-approximation. Exposed so that
// simulations can observe the state between steps; f_approx_bucketed is
// this class run to completion, so equal RNG states give equal covers.
class BucketedSweep {
 public:
  // Draws one bucket per element (the only RNG use).
  BucketedSweep(const SetCoverInstance& instance, const Schedule& schedule,
                Rng& rng);

  const Schedule& schedule() const { return schedule_; }
  bool done() const { return remaining_ == 0; }
  // Step executed by the next call to run_step().
  std::size_t current_step() const { return remaining_ - 1; }
  void run_step();
  void run_to_completion();

  std::size_t bucket_of(ElementId t) const { return bucket_of_[t]; }
  std::span<const ElementId> bucket(std::size_t step) const;
  bool is_marked(ElementId t) const { return marked_[t] != 0; }
  bool is_chosen(SetId s) const { return chosen_[s] != 0; }

  const Cover& cover() const { return cover_; }
  const CostCounters& counters() const { return counters_; }

 private:
  const SetCoverInstance& instance_;
  Schedule schedule_;
  std::size_t remaining_;
  std::vector<std::uint32_t> bucket_of_;
  std::vector<std::size_t> bucket_offsets_;
  std::vector<ElementId> bucket_elements_;
  std::vector<std::uint8_t> marked_;
  std::vector<std::uint8_t> chosen_;
  std::vector<ElementId> batch_;
  Cover cover_;
  CostCounters counters_;
};

// Residual-size estimates for the H_Delta algorithm. Implementations must
// return d with |residual| <= d <= (1 + delta) |residual|.
class SizeOracle {
 public:
  virtual ~SizeOracle() = default;
  virtual double estimate(SetId set,
                          std::span<const ElementId> residual_elements) = 0;
  virtual double delta() const = 0;
};

class ExactSizeOracle final : public SizeOracle {
 public:
  double estimate(SetId, std::span<const ElementId> residual) override {
    return static_cast<double>(residual.size());
  }
  double delta() const override { return 0.0; }
};

// Exact size times an independent uniform factor in [1, 1 + delta].
class NoisyExactSizeOracle final : public SizeOracle {
 public:
  NoisyExactSizeOracle(double delta, std::uint64_t seed);
  double estimate(SetId set, std::span<const ElementId> residual) override;
  double delta() const override { return delta_; }

 private:
  double delta_;
  Rng rng_;
};

// One committed batch of the H_Delta algorithm, recorded before the batch
// is applied.
struct BatchRecord {
  std::size_t round = 0;  // size threshold (1+eps)^round
  std::size_t step = 0;
  std::size_t batch_size = 0;
  std::size_t min_residual_in_batch = 0;
  std::size_t max_live_residual = 0;  // over every live set
  std::size_t newly_covered = 0;
  // Sum over newly covered elements of the number of batch sets holding it.
  std::size_t multiplicity_sum = 0;
};

struct HdeltaTrace {
  std::vector<BatchRecord> batches;
};

// (1+eps)(1+4eps) H_Delta approximation by size thresholds: rounds
// j = floor(log_{1+eps} Delta)..0, each running the inner schedule (length
// from the global f) over the sets whose estimated residual size reaches
// (1+eps)^j. Sets live in size buckets and are moved down lazily, when
// visited. Passing a trace makes every batch record its residual sizes,
// which costs O(m) per batch.
SolveResult hdelta_cover(const SetCoverInstance& instance, double eps,
                         Rng& rng, SizeOracle& oracle,
                         const SolverOptions& options = {},
                         HdeltaTrace* trace = nullptr);
SolveResult hdelta_cover(const SetCoverInstance& instance, double eps,
                         Rng& rng, const SolverOptions& options = {});

struct CoverCheck {
  bool valid = false;
  std::optional<ElementId> uncovered;  // lowest uncovered element
};

// Throws kOutOfRange for set ids outside the instance.
CoverCheck verify_cover(const SetCoverInstance& instance, const Cover& cover);

enum class CoverAlgorithm { kOnline, kBucketed, kHdelta };

using CoverSolver = std::function<SolveResult(const SetCoverInstance&,
                                              double eps, Rng& rng)>;

CoverSolver make_cover_solver(CoverAlgorithm algorithm,
                              const SolverOptions& options = {});

}  // namespace cover_sampler

#endif  // COVER_SAMPLER_COVER_HPP_
