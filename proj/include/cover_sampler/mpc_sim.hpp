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

#ifndef COVER_SAMPLER_MPC_SIM_HPP_
#define COVER_SAMPLER_MPC_SIM_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cover_sampler/cover.hpp"
#include "cover_sampler/instance.hpp"
#include "cover_sampler/matching.hpp"
#include "cover_sampler/rng.hpp"

// Single-machine simulation of the round-compressed MPC execution: the
// schedule is split into phases, each phase's relevant neighbourhood is
// measured, and rounds are counted as sum over phases of ceil(log2 r) + 2.
namespace cover_sampler::mpc {

// Multipliers for the constants hidden in the phase-length rules.
struct PlannerConstants {
  double tau_scale = 1.0;             // tau = tau_scale * ln n / p_i
  double case1_exponent_scale = 1.0;  // Case 1: ln tau <= c eps^-2 (ln ln n)^2
  double case2_scale = 1.0;           // r = ceil(c eps^-1 sqrt(ln tau))
  double case3_scale = 1.0;           // r = ceil(c ln tau / ln f)
};

struct Phase {
  std::size_t start_step = 0;  // first (highest) step of the phase
  std::size_t length = 0;      // r: steps i = start, ..., start - r + 1
  int case_tag = 1;
  double tau = 0.0;
};

struct PhasePlan {
  double eps = 0.0;
  std::size_t k = 0;
  std::vector<Phase> phases;
  std::size_t predicted_mpc_rounds = 0;
};

// MPC rounds needed to simulate r steps of one phase.
std::size_t rounds_for_phase(std::size_t r);

// Splits steps k..0 into phases. `case_freq` is the f of the Case 2/3 test.
// Phase lengths are clamped to [1, min(remaining steps, floor(ln n))].
PhasePlan plan_steps(std::size_t k, double case_freq, double eps, double n,
                     const PlannerConstants& constants = {});

// Plan for the f-approximation: k from the outer schedule for delta.
PhasePlan plan_phases(std::size_t delta, std::size_t freq, double eps,
                      double n, const PlannerConstants& constants = {});

// Plan for one inner loop of the H_Delta algorithm in the sublinear regime:
// the inner schedule for freq, with ln^2 n / eps^3 as the Case 2/3 f.
PhasePlan plan_hdelta_inner_phases(std::size_t freq, double eps, double n,
                                   const PlannerConstants& constants = {});

struct PhaseRecord {
  std::size_t phase_index = 0;
  int case_tag = 1;
  std::size_t r = 0;
  std::size_t start_step = 0;
  double sampled_prob_start = 0.0;  // p at the phase's first step
  double sampled_prob_end = 0.0;    // p at the phase's last step
  std::size_t live_elements = 0;    // unmarked at phase start
  std::size_t relevant_elements = 0;
  std::size_t relevant_edges = 0;   // space proxy
  std::size_t non_isolated_sets = 0;
  std::size_t max_ball = 0;
  std::size_t residual_degree_after = 0;
  double degree_bound = 0.0;  // kDegreeDropConstant * ln n / p_end
  std::size_t cumulative_rounds = 0;
};

// Constant of the high-probability degree-drop check.
inline constexpr double kDegreeDropConstant = 8.0;

struct MpcReport {
  PhasePlan plan;
  std::vector<PhaseRecord> phases;
  std::size_t simulated_rounds = 0;
  std::size_t max_relevant_edges = 0;

  bool degree_drop_holds() const;
};

struct MpcRun {
  SolveResult solve;
  MpcReport report;
};

// Runs the bucketed f-approximation phase by phase. Consumes the RNG exactly
// like f_approx_bucketed, so equal seeds give identical covers. Balls are
// measured in the bipartite relevant subgraph (relevant elements and the live
// sets containing them) with radius 2r edges, i.e. r element-to-element hops.
MpcRun simulate_mpc_f_approx(const SetCoverInstance& instance, double eps,
                             Rng& rng, const PlannerConstants& constants = {});

struct SparsifyResult {
  std::vector<EdgeId> kept;
  std::size_t non_isolated = 0;
};

// Keeps each edge independently with probability p in [0, 1].
SparsifyResult sparsify_hypergraph(const Hypergraph& hg, double p, Rng& rng);

struct ChosenSet {
  SetId set = 0;
  std::size_t true_residual = 0;
  double estimate = 0.0;
};

struct DegreeBatch {
  std::size_t step = 0;
  std::vector<ChosenSet> chosen;
};

struct DegreeEstimationTrace {
  std::size_t round = 0;
  double q = 0.0;
  double threshold = 0.0;  // (1+eps)^round
  std::size_t k = 0;
  std::vector<DegreeBatch> batches;
  // estimates[x][s]: running-minimum estimate of set s after the x-th
  // executed step (x = 0 is step k); +inf until a set's first sample count.
  std::vector<std::vector<double>> estimates;
  Cover cover;
};

// Sampling rate of the degree estimator for round j.
double degree_sample_rate(double eps, std::size_t round, double n);

// One inner loop for size threshold (1+eps)^round in which residual sizes are
// estimated from independent element samples X_k..X_0 drawn at rate q. Sets
// are eligible while their running-minimum estimate reaches the threshold.
// Throws kOutOfRange if round exceeds floor(log_{1+eps} Delta).
DegreeEstimationTrace simulate_degree_estimation(
    const SetCoverInstance& instance, double eps, std::size_t round,
    Rng& rng);

// ceil(ln n / eps).
std::size_t default_copies(double n, double eps);

struct AmplifiedCover {
  SolveResult best;
  std::size_t best_copy = 0;
  std::vector<std::size_t> sizes;  // per copy; SIZE_MAX marks an invalid one
};

// Runs copy c on stream (seed, c) and keeps the smallest valid cover (lowest
// copy on ties). Throws kInvalidArgument if copies == 0.
AmplifiedCover amplify_to_whp(const CoverSolver& solver,
                              const SetCoverInstance& instance, double eps,
                              std::size_t copies, std::uint64_t seed);

struct AmplifiedMatching {
  MatchingResult best;
  std::size_t best_copy = 0;
  std::vector<std::size_t> sizes;  // per copy; 0 for invalid ones
};

AmplifiedMatching amplify_matching_to_whp(const MatchingSolver& solver,
                                          const Hypergraph& hg, double eps,
                                          std::size_t copies,
                                          std::uint64_t seed);

// Per-phase CSV: phase_index,case,r_j,sampled_prob_start,relevant_elements,
// max_ball,residual_degree_after,cumulative_rounds. A report without phases
// becomes a single all-zero row.
void write_phase_csv_header(std::ostream& out);
void write_phase_csv_rows(const MpcReport& report, std::ostream& out);

// Planner-only rows (no execution): measured columns are left empty.
void write_plan_csv_rows(const PhasePlan& plan, std::ostream& out);

}  // namespace cover_sampler::mpc

#endif  // COVER_SAMPLER_MPC_SIM_HPP_
