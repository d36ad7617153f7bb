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

#include "cover_sampler/mpc_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "cover_sampler/error.hpp"
#include "cover_sampler/parallel.hpp"
#include "cover_sampler/schedule.hpp"

namespace cover_sampler::mpc {

std::size_t rounds_for_phase(std::size_t r) {
  std::size_t log2_ceil = 0;
  while ((std::size_t{1} << log2_ceil) < r) ++log2_ceil;
  return log2_ceil + 2;
}

PhasePlan plan_steps(std::size_t k, double case_freq, double eps, double n,
                     const PlannerConstants& constants) {
  validate_epsilon(eps);
  if (!(n >= 2.0)) {
    throw Error(ErrorCode::kInvalidArgument, "planner needs n >= 2");
  }
  const Schedule schedule(eps, k);
  const double ln_n = std::log(n);
  const double lnln_n = std::log(ln_n);
  const double case1_limit =
      constants.case1_exponent_scale * lnln_n * lnln_n / (eps * eps);
  const auto length_cap = static_cast<std::size_t>(
      std::max(1.0, std::floor(ln_n)));

  PhasePlan plan;
  plan.eps = eps;
  plan.k = k;
  std::size_t remaining = k + 1;
  std::size_t step = k;
  while (remaining > 0) {
    const double tau = constants.tau_scale * ln_n / schedule[step];
    const double ln_tau = std::log(tau);
    Phase phase;
    phase.start_step = step;
    phase.tau = tau;
    double r = 1.0;
    if (ln_tau <= case1_limit) {
      phase.case_tag = 1;
    } else {
      const double r2 =
          std::ceil(constants.case2_scale * std::sqrt(ln_tau) / eps);
      const double growth =
          std::pow(1.0 + eps, r2 / static_cast<double>(schedule.b()));
      if (case_freq > 1.0 && case_freq > growth * ln_n * ln_n) {
        phase.case_tag = 3;
        r = std::ceil(constants.case3_scale * ln_tau / std::log(case_freq));
      } else {
        phase.case_tag = 2;
        r = r2;
      }
    }
    const std::size_t cap = std::min(remaining, length_cap);
    phase.length = r >= static_cast<double>(cap)
                       ? cap
                       : std::max<std::size_t>(1, static_cast<std::size_t>(r));
    plan.predicted_mpc_rounds += rounds_for_phase(phase.length);
    plan.phases.push_back(phase);
    remaining -= phase.length;
    if (remaining > 0) step -= phase.length;
  }
  return plan;
}

PhasePlan plan_phases(std::size_t delta, std::size_t freq, double eps,
                      double n, const PlannerConstants& constants) {
  return plan_steps(schedule_length_outer(delta, eps),
                    static_cast<double>(freq), eps, n, constants);
}

PhasePlan plan_hdelta_inner_phases(std::size_t freq, double eps, double n,
                                   const PlannerConstants& constants) {
  validate_epsilon(eps);
  const double ln_n = std::log(std::max(n, 2.0));
  return plan_steps(schedule_length_inner(freq, eps),
                    ln_n * ln_n / (eps * eps * eps), eps, n, constants);
}

bool MpcReport::degree_drop_holds() const {
  return std::all_of(phases.begin(), phases.end(), [](const PhaseRecord& r) {
    return static_cast<double>(r.residual_degree_after) <= r.degree_bound;
  });
}

namespace {

// Relevant subgraph of one phase: unmarked elements whose bucket falls in the
// phase, and the live sets containing them.
class RelevantSubgraph {
 public:
  explicit RelevantSubgraph(const SetCoverInstance& instance)
      : instance_(instance),
        set_slot_(instance.num_sets(), kNone),
        element_slot_(instance.num_elements(), kNone) {}

  void build(const BucketedSweep& sweep, std::size_t low, std::size_t high) {
    for (SetId s : sets_) set_slot_[s] = kNone;
    for (ElementId t : elements_) element_slot_[t] = kNone;
    sets_.clear();
    elements_.clear();
    edges_ = 0;
    for (std::size_t step = low; step <= high; ++step) {
      for (ElementId t : sweep.bucket(step)) {
        if (sweep.is_marked(t)) continue;
        element_slot_[t] = static_cast<std::uint32_t>(elements_.size());
        elements_.push_back(t);
        for (SetId s : instance_.sets_of(t)) {
          if (sweep.is_chosen(s)) continue;
          ++edges_;
          if (set_slot_[s] == kNone) {
            set_slot_[s] = static_cast<std::uint32_t>(sets_.size());
            sets_.push_back(s);
          }
        }
      }
    }
  }

  std::size_t num_elements() const { return elements_.size(); }
  std::size_t num_sets() const { return sets_.size(); }
  std::size_t num_edges() const { return edges_; }

  // Largest number of vertices within `hops` edges of a relevant element.
  std::size_t max_ball(const BucketedSweep& sweep, std::size_t hops) {
    const std::size_t nv = elements_.size() + sets_.size();
    seen_.assign(nv, 0);
    std::uint32_t stamp = 0;
    std::size_t best = 0;
    for (std::size_t src = 0; src < elements_.size(); ++src) {
      ++stamp;
      frontier_.assign(1, static_cast<std::uint32_t>(src));
      seen_[src] = stamp;
      std::size_t count = 1;
      for (std::size_t h = 0; h < hops && !frontier_.empty(); ++h) {
        next_.clear();
        for (std::uint32_t v : frontier_) {
          if (v < elements_.size()) {
            for (SetId s : instance_.sets_of(elements_[v])) {
              if (sweep.is_chosen(s)) continue;
              const auto u =
                  static_cast<std::uint32_t>(elements_.size() + set_slot_[s]);
              if (seen_[u] == stamp) continue;
              seen_[u] = stamp;
              next_.push_back(u);
            }
          } else {
            const SetId s = sets_[v - elements_.size()];
            for (ElementId t : instance_.elements_of(s)) {
              const std::uint32_t slot = element_slot_[t];
              if (slot == kNone || seen_[slot] == stamp) continue;
              seen_[slot] = stamp;
              next_.push_back(slot);
            }
          }
        }
        count += next_.size();
        frontier_.swap(next_);
      }
      best = std::max(best, count);
    }
    return best;
  }

 private:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  const SetCoverInstance& instance_;
  std::vector<std::uint32_t> set_slot_;
  std::vector<std::uint32_t> element_slot_;
  std::vector<SetId> sets_;
  std::vector<ElementId> elements_;
  std::size_t edges_ = 0;
  std::vector<std::uint32_t> seen_;
  std::vector<std::uint32_t> frontier_;
  std::vector<std::uint32_t> next_;
};

std::size_t max_residual_size(const SetCoverInstance& instance,
                              const BucketedSweep& sweep) {
  std::size_t best = 0;
  for (SetId s = 0; s < instance.num_sets(); ++s) {
    if (sweep.is_chosen(s)) continue;
    std::size_t live = 0;
    for (ElementId t : instance.elements_of(s)) {
      live += sweep.is_marked(t) ? 0 : 1;
    }
    best = std::max(best, live);
  }
  return best;
}

}  // namespace

MpcRun simulate_mpc_f_approx(const SetCoverInstance& instance, double eps,
                             Rng& rng, const PlannerConstants& constants) {
  validate_epsilon(eps);
  MpcRun run;
  if (instance.delta() == 0) return run;
  const double n = std::max<double>(2.0, static_cast<double>(
                                             instance.num_vertices()));
  const double ln_n = std::log(n);
  auto& report = run.report;
  report.plan = plan_phases(instance.delta(), instance.freq(), eps, n,
                            constants);

  BucketedSweep sweep(instance, Schedule::outer(instance.delta(), eps), rng);
  const Schedule& schedule = sweep.schedule();
  RelevantSubgraph relevant(instance);
  std::size_t live = instance.num_elements();
  for (std::size_t x = 0; x < report.plan.phases.size(); ++x) {
    const Phase& phase = report.plan.phases[x];
    const std::size_t high = phase.start_step;
    const std::size_t low = high + 1 - phase.length;

    PhaseRecord rec;
    rec.phase_index = x;
    rec.case_tag = phase.case_tag;
    rec.r = phase.length;
    rec.start_step = high;
    rec.sampled_prob_start = schedule[high];
    rec.sampled_prob_end = schedule[low];
    rec.live_elements = live;
    relevant.build(sweep, low, high);
    rec.relevant_elements = relevant.num_elements();
    rec.relevant_edges = relevant.num_edges();
    rec.non_isolated_sets = relevant.num_sets();
    rec.max_ball = relevant.max_ball(sweep, 2 * phase.length);

    for (std::size_t i = 0; i < phase.length; ++i) sweep.run_step();

    live = 0;
    for (std::size_t t = 0; t < instance.num_elements(); ++t) {
      live += sweep.is_marked(static_cast<ElementId>(t)) ? 0 : 1;
    }
    rec.residual_degree_after = max_residual_size(instance, sweep);
    rec.degree_bound = kDegreeDropConstant * ln_n / rec.sampled_prob_end;
    report.simulated_rounds += rounds_for_phase(phase.length);
    rec.cumulative_rounds = report.simulated_rounds;
    report.max_relevant_edges =
        std::max(report.max_relevant_edges, rec.relevant_edges);
    report.phases.push_back(rec);
  }
  run.solve = {sweep.cover(), sweep.counters()};
  return run;
}

SparsifyResult sparsify_hypergraph(const Hypergraph& hg, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "keep probability must lie in [0, 1]");
  }
  SparsifyResult result;
  const std::size_t m = hg.num_edges();
  if (p >= 1.0) {
    result.kept.resize(m);
    for (std::size_t e = 0; e < m; ++e) result.kept[e] = static_cast<EdgeId>(e);
  } else if (p > 0.0) {
    const double log1m_p = std::log1p(-p);
    for (std::size_t e = geometric_skip(rng, log1m_p); e < m;
         e += 1 + geometric_skip(rng, log1m_p)) {
      result.kept.push_back(static_cast<EdgeId>(e));
    }
  }
  std::vector<std::uint8_t> touched(hg.num_vertices(), 0);
  for (EdgeId e : result.kept) {
    for (VertexId v : hg.edge(e)) {
      if (!touched[v]) {
        touched[v] = 1;
        ++result.non_isolated;
      }
    }
  }
  return result;
}

double degree_sample_rate(double eps, std::size_t round, double n) {
  validate_epsilon(eps);
  const double rate = 100.0 / (eps * eps) * std::log(n) /
                      std::pow(1.0 + eps, static_cast<double>(round));
  return std::min(rate, 1.0);
}

DegreeEstimationTrace simulate_degree_estimation(
    const SetCoverInstance& instance, double eps, std::size_t round,
    Rng& rng) {
  validate_epsilon(eps);
  const std::size_t top =
      instance.delta() == 0
          ? 0
          : static_cast<std::size_t>(floor_guarded(log_one_plus(
                static_cast<double>(instance.delta()), eps)));
  if (round > top) {
    throw Error(ErrorCode::kOutOfRange,
                "round " + std::to_string(round) + " outside [0, " +
                    std::to_string(top) + "]");
  }
  DegreeEstimationTrace trace;
  trace.round = round;
  trace.threshold = std::pow(1.0 + eps, static_cast<double>(round));
  if (instance.delta() == 0) return trace;

  const double n =
      std::max<double>(2.0, static_cast<double>(instance.num_vertices()));
  trace.q = degree_sample_rate(eps, round, n);
  const Schedule schedule = Schedule::inner(instance.freq(), eps);
  const std::size_t k = schedule.k();
  trace.k = k;

  // X_k, ..., X_0, drawn upfront; samples[x] is X_{k - x}.
  const std::size_t ne = instance.num_elements();
  std::vector<std::vector<std::uint8_t>> samples(
      k + 1, std::vector<std::uint8_t>(ne, 0));
  for (auto& sample : samples) {
    if (trace.q >= 1.0) {
      std::fill(sample.begin(), sample.end(), 1);
      continue;
    }
    const double log1m_q = std::log1p(-trace.q);
    for (std::size_t t = geometric_skip(rng, log1m_q); t < ne;
         t += 1 + geometric_skip(rng, log1m_q)) {
      sample[t] = 1;
    }
  }

  const std::size_t ns = instance.num_sets();
  std::vector<double> estimate(ns, std::numeric_limits<double>::infinity());
  std::vector<std::uint8_t> marked(ne, 0);
  std::vector<std::uint8_t> chosen(ns, 0);
  std::vector<SetId> batch;
  for (std::size_t x = 0; x <= k; ++x) {
    const std::size_t step = k - x;
    const auto& sample = samples[x];
    for (SetId s = 0; s < ns; ++s) {
      if (chosen[s]) continue;
      std::size_t hits = 0;
      for (ElementId t : instance.elements_of(s)) {
        hits += (!marked[t] && sample[t]) ? 1 : 0;
      }
      estimate[s] = std::min(estimate[s], static_cast<double>(hits) / trace.q);
    }
    batch.clear();
    const double p = schedule[step];
    for (SetId s = 0; s < ns; ++s) {
      if (chosen[s] || estimate[s] < 1.0) continue;
      if (floor_guarded(log_one_plus(estimate[s], eps)) <
          static_cast<long long>(round)) {
        continue;
      }
      if (p >= 1.0 || bernoulli(rng, p)) batch.push_back(s);
    }
    if (!batch.empty()) {
      DegreeBatch rec;
      rec.step = step;
      for (SetId s : batch) {
        std::size_t residual = 0;
        for (ElementId t : instance.elements_of(s)) residual += marked[t] ? 0 : 1;
        rec.chosen.push_back({s, residual, estimate[s]});
      }
      for (SetId s : batch) {
        chosen[s] = 1;
        trace.cover.sets.push_back(s);
        for (ElementId t : instance.elements_of(s)) marked[t] = 1;
      }
      trace.batches.push_back(std::move(rec));
    }
    trace.estimates.push_back(estimate);
  }
  return trace;
}

std::size_t default_copies(double n, double eps) {
  validate_epsilon(eps);
  return static_cast<std::size_t>(
      std::max(1.0, std::ceil(std::log(std::max(n, 2.0)) / eps)));
}

AmplifiedCover amplify_to_whp(const CoverSolver& solver,
                              const SetCoverInstance& instance, double eps,
                              std::size_t copies, std::uint64_t seed) {
  if (copies == 0) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one copy");
  }
  std::vector<SolveResult> results(copies);
  parallel_for(copies, [&](std::size_t c) {
    Rng rng = make_stream(seed, c);
    results[c] = solver(instance, eps, rng);
  });
  AmplifiedCover out;
  out.sizes.resize(copies);
  std::size_t best = SIZE_MAX;
  for (std::size_t c = 0; c < copies; ++c) {
    const bool valid = verify_cover(instance, results[c].cover).valid;
    out.sizes[c] = valid ? results[c].cover.size() : SIZE_MAX;
    if (valid && (best == SIZE_MAX || out.sizes[c] < out.sizes[best])) best = c;
  }
  if (best == SIZE_MAX) {
    throw Error(ErrorCode::kInvalidArgument, "no copy produced a valid cover");
  }
  out.best_copy = best;
  out.best = std::move(results[best]);
  return out;
}

AmplifiedMatching amplify_matching_to_whp(const MatchingSolver& solver,
                                          const Hypergraph& hg, double eps,
                                          std::size_t copies,
                                          std::uint64_t seed) {
  if (copies == 0) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one copy");
  }
  std::vector<MatchingResult> results(copies);
  parallel_for(copies, [&](std::size_t c) {
    Rng rng = make_stream(seed, c);
    results[c] = solver(hg, eps, rng);
  });
  AmplifiedMatching out;
  out.sizes.resize(copies);
  std::size_t best = SIZE_MAX;
  for (std::size_t c = 0; c < copies; ++c) {
    const bool valid = verify_matching(hg, results[c].matching).valid;
    out.sizes[c] = valid ? results[c].matching.size() : 0;
    if (valid && (best == SIZE_MAX || out.sizes[c] > out.sizes[best])) best = c;
  }
  if (best == SIZE_MAX) {
    throw Error(ErrorCode::kInvalidArgument,
                "no copy produced a valid matching");
  }
  out.best_copy = best;
  out.best = std::move(results[best]);
  return out;
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

}  // namespace

void write_phase_csv_header(std::ostream& out) {
  out << "phase_index,case,r_j,sampled_prob_start,relevant_elements,"
         "max_ball,residual_degree_after,cumulative_rounds\n";
}

void write_phase_csv_rows(const MpcReport& report, std::ostream& out) {
  if (report.phases.empty()) {
    out << "0,0,0,0,0,0,0,0\n";
    return;
  }
  for (const auto& r : report.phases) {
    out << r.phase_index << ',' << r.case_tag << ',' << r.r << ','
        << fmt(r.sampled_prob_start) << ',' << r.relevant_elements << ','
        << r.max_ball << ',' << r.residual_degree_after << ','
        << r.cumulative_rounds << '\n';
  }
}

void write_plan_csv_rows(const PhasePlan& plan, std::ostream& out) {
  if (plan.phases.empty()) {
    out << "0,0,0,0,,,,0\n";
    return;
  }
  const Schedule schedule(plan.eps, plan.k);
  std::size_t rounds = 0;
  for (std::size_t x = 0; x < plan.phases.size(); ++x) {
    const auto& ph = plan.phases[x];
    rounds += rounds_for_phase(ph.length);
    out << x << ',' << ph.case_tag << ',' << ph.length << ','
        << fmt(schedule[ph.start_step]) << ",,,," << rounds << '\n';
  }
}

}  // namespace cover_sampler::mpc
