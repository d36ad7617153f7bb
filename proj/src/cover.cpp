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

#include "cover_sampler/cover.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "cover_sampler/error.hpp"

namespace cover_sampler {

CostCounters& CostCounters::operator+=(const CostCounters& other) {
  element_touches += other.element_touches;
  set_touches += other.set_touches;
  edge_touches += other.edge_touches;
  steps_executed += other.steps_executed;
  rebucket_events += other.rebucket_events;
  return *this;
}

double schedule_eps(double eps, const SolverOptions& options) {
  validate_epsilon(eps);
  return options.calibrated ? eps / 4.0 : eps;
}

namespace {

// Adds every not-yet-chosen set containing t and marks what those sets cover.
void take_sets_of(const SetCoverInstance& instance, ElementId t,
                  std::vector<std::uint8_t>& chosen,
                  std::vector<std::uint8_t>& marked, Cover& cover,
                  CostCounters& counters) {
  for (SetId s : instance.sets_of(t)) {
    ++counters.edge_touches;
    if (chosen[s]) continue;
    chosen[s] = 1;
    cover.sets.push_back(s);
    ++counters.set_touches;
    for (ElementId u : instance.elements_of(s)) {
      ++counters.edge_touches;
      marked[u] = 1;
    }
  }
}

}  // namespace

SolveResult f_approx_online(const SetCoverInstance& instance, double eps,
                            Rng& rng, const SolverOptions& options) {
  const double run_eps = schedule_eps(eps, options);
  SolveResult result;
  if (instance.delta() == 0) return result;
  const Schedule schedule = Schedule::outer(instance.delta(), run_eps);

  std::vector<std::uint8_t> marked(instance.num_elements(), 0);
  std::vector<std::uint8_t> chosen(instance.num_sets(), 0);
  std::vector<ElementId> live(instance.num_elements());
  for (std::size_t t = 0; t < live.size(); ++t) {
    live[t] = static_cast<ElementId>(t);
  }
  std::vector<ElementId> sampled;
  auto& counters = result.counters;

  for (std::size_t step = schedule.k() + 1; step-- > 0;) {
    ++counters.steps_executed;
    const double p = schedule[step];
    sampled.clear();
    if (p >= 1.0) {
      for (ElementId t : live) {
        if (!marked[t]) sampled.push_back(t);
      }
    } else {
      // Marked entries are still in `live` until the next compaction; their
      // draws are simply ignored.
      const double log1m_p = std::log1p(-p);
      for (std::size_t pos = geometric_skip(rng, log1m_p); pos < live.size();
           pos += 1 + geometric_skip(rng, log1m_p)) {
        if (!marked[live[pos]]) sampled.push_back(live[pos]);
      }
    }
    for (ElementId t : sampled) {
      ++counters.element_touches;
      take_sets_of(instance, t, chosen, marked, result.cover, counters);
    }
    if (!sampled.empty()) {
      std::erase_if(live, [&](ElementId t) { return marked[t] != 0; });
    }
  }
  return result;
}

BucketedSweep::BucketedSweep(const SetCoverInstance& instance,
                             const Schedule& schedule, Rng& rng)
    : instance_(instance),
      schedule_(schedule),
      remaining_(schedule.k() + 1),
      bucket_of_(instance.num_elements()),
      bucket_offsets_(schedule.k() + 2, 0),
      bucket_elements_(instance.num_elements()),
      marked_(instance.num_elements(), 0),
      chosen_(instance.num_sets(), 0) {
  const std::vector<double> dist = schedule_.bucket_distribution();
  const AliasTable alias(dist);
  for (auto& b : bucket_of_) {
    b = static_cast<std::uint32_t>(alias.sample(rng));
    ++bucket_offsets_[b + 1];
  }
  for (std::size_t i = 1; i < bucket_offsets_.size(); ++i) {
    bucket_offsets_[i] += bucket_offsets_[i - 1];
  }
  std::vector<std::size_t> fill(bucket_offsets_.begin(),
                                bucket_offsets_.end() - 1);
  for (std::size_t t = 0; t < bucket_of_.size(); ++t) {
    bucket_elements_[fill[bucket_of_[t]]++] = static_cast<ElementId>(t);
  }
}

std::span<const ElementId> BucketedSweep::bucket(std::size_t step) const {
  return {bucket_elements_.data() + bucket_offsets_[step],
          bucket_offsets_[step + 1] - bucket_offsets_[step]};
}

void BucketedSweep::run_step() {
  const std::size_t step = current_step();
  ++counters_.steps_executed;
  // The batch is fixed before any set of this step is added, exactly as if
  // all of them had been sampled at once.
  batch_.clear();
  for (ElementId t : bucket(step)) {
    ++counters_.element_touches;
    if (!marked_[t]) batch_.push_back(t);
  }
  for (ElementId t : batch_) {
    take_sets_of(instance_, t, chosen_, marked_, cover_, counters_);
  }
  --remaining_;
}

void BucketedSweep::run_to_completion() {
  while (!done()) run_step();
}

SolveResult f_approx_bucketed(const SetCoverInstance& instance, double eps,
                              Rng& rng, const SolverOptions& options) {
  const double run_eps = schedule_eps(eps, options);
  if (instance.delta() == 0) return {};
  BucketedSweep sweep(instance, Schedule::outer(instance.delta(), run_eps),
                      rng);
  sweep.run_to_completion();
  return {sweep.cover(), sweep.counters()};
}

NoisyExactSizeOracle::NoisyExactSizeOracle(double delta, std::uint64_t seed)
    : delta_(delta), rng_(seed) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorCode::kInvalidArgument,
                "size oracle delta must be finite and nonnegative");
  }
}

double NoisyExactSizeOracle::estimate(SetId,
                                      std::span<const ElementId> residual) {
  return static_cast<double>(residual.size()) *
         (1.0 + delta_ * uniform01(rng_));
}

namespace {

// State of the H_Delta algorithm. Each set keeps a private copy of its
// element list that is compacted (covered elements dropped) whenever the set
// is visited, so a visit costs the residual size seen at the previous visit.
class HdeltaRun {
 public:
  HdeltaRun(const SetCoverInstance& instance, double eps, SizeOracle& oracle,
            HdeltaTrace* trace)
      : instance_(instance),
        eps_(eps),
        oracle_(oracle),
        trace_(trace),
        top_round_(static_cast<std::size_t>(
            floor_guarded(log_one_plus(static_cast<double>(instance.delta()),
                                       eps)))),
        offsets_(instance.num_sets() + 1, 0),
        length_(instance.num_sets(), 0),
        lists_(instance.num_edges()),
        marked_(instance.num_elements(), 0),
        chosen_(instance.num_sets(), 0),
        rounds_(top_round_ + 1) {
    for (SetId s = 0; s < instance.num_sets(); ++s) {
      const auto elems = instance.elements_of(s);
      offsets_[s + 1] = offsets_[s] + elems.size();
      std::copy(elems.begin(), elems.end(), lists_.begin() + offsets_[s]);
      length_[s] = elems.size();
    }
    if (trace_) hits_.assign(instance.num_elements(), 0);
  }

  SolveResult run(Rng& rng) {
    const Schedule inner = Schedule::inner(instance_.freq(), eps_);
    const AliasTable alias(inner.bucket_distribution());
    const std::size_t k = inner.k();

    for (SetId s = 0; s < instance_.num_sets(); ++s) {
      if (length_[s] == 0) continue;
      const auto b = size_bucket(visit(s));
      rounds_[std::min<std::size_t>(top_round_, static_cast<std::size_t>(b))]
          .push_back(s);
    }

    std::vector<std::size_t> step_offsets(k + 2);
    std::vector<SetId> by_step;
    std::vector<std::uint32_t> drawn;
    std::vector<std::pair<SetId, std::size_t>> moved;
    for (std::size_t round = top_round_ + 1; round-- > 0;) {
      const std::vector<SetId> members = std::move(rounds_[round]);
      rounds_[round].clear();
      // Fixed randomness: the step at which each set would first be sampled.
      drawn.resize(members.size());
      std::fill(step_offsets.begin(), step_offsets.end(), 0);
      for (std::size_t x = 0; x < members.size(); ++x) {
        drawn[x] = static_cast<std::uint32_t>(alias.sample(rng));
        ++step_offsets[drawn[x] + 1];
      }
      for (std::size_t i = 1; i < step_offsets.size(); ++i) {
        step_offsets[i] += step_offsets[i - 1];
      }
      by_step.resize(members.size());
      {
        std::vector<std::size_t> fill(step_offsets.begin(),
                                      step_offsets.end() - 1);
        for (std::size_t x = 0; x < members.size(); ++x) {
          by_step[fill[drawn[x]]++] = members[x];
        }
      }

      moved.clear();
      for (std::size_t step = k + 1; step-- > 0;) {
        ++result_.counters.steps_executed;
        batch_.clear();
        for (std::size_t x = step_offsets[step]; x < step_offsets[step + 1];
             ++x) {
          const SetId s = by_step[x];
          const double estimate = visit(s);
          if (length_[s] == 0) continue;
          const long long b = size_bucket(estimate);
          if (b >= static_cast<long long>(round)) {
            batch_.push_back(s);
          } else {
            moved.emplace_back(s, static_cast<std::size_t>(b));
          }
        }
        if (batch_.empty()) continue;
        if (trace_) record_batch(round, step);
        commit_batch();
      }
      // Lazy rebucketing: sets that fell below the threshold wait for the
      // end of the round before moving to their new bucket.
      for (const auto& [s, b] : moved) {
        ++result_.counters.rebucket_events;
        rounds_[b].push_back(s);
      }
    }
    return std::move(result_);
  }

 private:
  std::span<ElementId> residual(SetId s) {
    return {lists_.data() + offsets_[s], length_[s]};
  }

  long long size_bucket(double estimate) const {
    if (estimate < 1.0) return -1;
    return floor_guarded(log_one_plus(estimate, eps_));
  }

  // Compacts the set's list and asks the oracle for its size.
  double visit(SetId s) {
    auto& counters = result_.counters;
    ++counters.set_touches;
    auto list = residual(s);
    counters.set_touches += list.size();
    std::size_t kept = 0;
    for (ElementId t : list) {
      if (!marked_[t]) list[kept++] = t;
    }
    length_[s] = kept;
    if (kept == 0) return 0.0;
    return oracle_.estimate(s, residual(s));
  }

  void commit_batch() {
    auto& counters = result_.counters;
    for (SetId s : batch_) {
      chosen_[s] = 1;
      result_.cover.sets.push_back(s);
      for (ElementId t : residual(s)) {
        ++counters.edge_touches;
        if (!marked_[t]) {
          marked_[t] = 1;
          ++counters.element_touches;
        }
      }
      length_[s] = 0;
    }
  }

  void record_batch(std::size_t round, std::size_t step) {
    BatchRecord rec;
    rec.round = round;
    rec.step = step;
    rec.batch_size = batch_.size();
    rec.min_residual_in_batch = instance_.num_elements();
    for (SetId s : batch_) {
      rec.min_residual_in_batch = std::min(rec.min_residual_in_batch,
                                           length_[s]);
      for (ElementId t : residual(s)) {
        if (hits_[t]++ == 0) ++rec.newly_covered;
        ++rec.multiplicity_sum;
      }
    }
    for (SetId s : batch_) {
      for (ElementId t : residual(s)) hits_[t] = 0;
    }
    for (SetId s = 0; s < instance_.num_sets(); ++s) {
      if (chosen_[s]) continue;
      std::size_t live = 0;
      for (ElementId t : instance_.elements_of(s)) live += marked_[t] ? 0 : 1;
      rec.max_live_residual = std::max(rec.max_live_residual, live);
    }
    trace_->batches.push_back(rec);
  }

  const SetCoverInstance& instance_;
  double eps_;
  SizeOracle& oracle_;
  HdeltaTrace* trace_;
  std::size_t top_round_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> length_;
  std::vector<ElementId> lists_;
  std::vector<std::uint8_t> marked_;
  std::vector<std::uint8_t> chosen_;
  std::vector<std::vector<SetId>> rounds_;
  std::vector<SetId> batch_;
  std::vector<std::uint32_t> hits_;
  SolveResult result_;
};

}  // namespace

SolveResult hdelta_cover(const SetCoverInstance& instance, double eps,
                         Rng& rng, SizeOracle& oracle,
                         const SolverOptions& options, HdeltaTrace* trace) {
  const double run_eps = schedule_eps(eps, options);
  if (instance.delta() == 0) return {};
  HdeltaRun run(instance, run_eps, oracle, trace);
  return run.run(rng);
}

SolveResult hdelta_cover(const SetCoverInstance& instance, double eps,
                         Rng& rng, const SolverOptions& options) {
  ExactSizeOracle oracle;
  return hdelta_cover(instance, eps, rng, oracle, options);
}

CoverCheck verify_cover(const SetCoverInstance& instance, const Cover& cover) {
  std::vector<std::uint8_t> covered(instance.num_elements(), 0);
  for (SetId s : cover.sets) {
    if (s >= instance.num_sets()) {
      throw Error(ErrorCode::kOutOfRange,
                  "set id " + std::to_string(s) + " outside [0, " +
                      std::to_string(instance.num_sets()) + ")");
    }
    for (ElementId t : instance.elements_of(s)) covered[t] = 1;
  }
  CoverCheck check;
  for (std::size_t t = 0; t < covered.size(); ++t) {
    if (!covered[t]) {
      check.uncovered = static_cast<ElementId>(t);
      return check;
    }
  }
  check.valid = true;
  return check;
}

CoverSolver make_cover_solver(CoverAlgorithm algorithm,
                              const SolverOptions& options) {
  switch (algorithm) {
    case CoverAlgorithm::kOnline:
      return [options](const SetCoverInstance& inst, double eps, Rng& rng) {
        return f_approx_online(inst, eps, rng, options);
      };
    case CoverAlgorithm::kBucketed:
      return [options](const SetCoverInstance& inst, double eps, Rng& rng) {
        return f_approx_bucketed(inst, eps, rng, options);
      };
    case CoverAlgorithm::kHdelta:
      return [options](const SetCoverInstance& inst, double eps, Rng& rng) {
        return hdelta_cover(inst, eps, rng, options);
      };
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown cover algorithm");
}

}  // namespace cover_sampler
