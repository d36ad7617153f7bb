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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cover_sampler/cover.hpp"
#include "cover_sampler/error.hpp"
#include "cover_sampler/mpc_sim.hpp"
#include "cover_sampler/oracle.hpp"
#include "cover_sampler/stats.hpp"
#include "support/oracles.hpp"

using namespace cover_sampler;
using namespace cover_sampler::mpc;

namespace {

void check_plan_shape(const PhasePlan& plan, double n) {
  std::size_t total = 0;
  std::size_t rounds = 0;
  std::size_t expected_start = plan.k;
  for (const auto& phase : plan.phases) {
    CHECK(phase.length >= 1);
    CHECK(static_cast<double>(phase.length) <= std::max(1.0, std::floor(std::log(n))));
    CHECK(phase.start_step == expected_start);
    CHECK(phase.case_tag >= 1);
    CHECK(phase.case_tag <= 3);
    expected_start -= std::min(expected_start, phase.length);
    total += phase.length;
    rounds += rounds_for_phase(phase.length);
  }
  CHECK(total == plan.k + 1);
  CHECK(rounds == plan.predicted_mpc_rounds);
}

}  // namespace

TEST_SUITE("mpc") {

TEST_CASE("rounds per phase") {
  CHECK(rounds_for_phase(1) == 2);
  CHECK(rounds_for_phase(2) == 3);
  CHECK(rounds_for_phase(4) == 4);
  CHECK(rounds_for_phase(5) == 5);
  CHECK(rounds_for_phase(64) == 8);
}

TEST_CASE("planner outputs partition the schedule") {
  for (double eps : {0.1, 0.25, 0.5}) {
    for (int lg_delta : {1, 4, 10, 20, 40}) {
      for (std::size_t f : {1u, 2u, 8u}) {
        for (double n : {16.0, 1048576.0, 1e12}) {
          const auto plan =
              plan_phases(std::size_t{1} << lg_delta, f, eps, n);
          CHECK(plan.k == schedule_length_outer(std::size_t{1} << lg_delta, eps));
          check_plan_shape(plan, n);
        }
      }
    }
  }
  check_plan_shape(plan_hdelta_inner_phases(3, 0.25, 1e6), 1e6);
  CHECK(plan_hdelta_inner_phases(3, 0.25, 1e6).k ==
        schedule_length_inner(3, 0.25));
}

TEST_CASE("all three cases occur where their thresholds say") {
  const auto case2 = plan_steps(2000, 2, 0.5, 1e12);
  const auto case3 = plan_steps(2000, 1e9, 0.5, std::pow(2.0, 20));
  auto count = [](const PhasePlan& plan, int tag) {
    return std::count_if(plan.phases.begin(), plan.phases.end(),
                         [&](const Phase& p) { return p.case_tag == tag; });
  };
  CHECK(count(case2, 2) > 0);
  CHECK(count(case2, 3) == 0);
  CHECK(count(case3, 3) > 0);
  for (const auto& phase : case2.phases) {
    if (phase.case_tag == 1) CHECK(phase.length == 1);
  }
  // A smaller Case 1 constant can only move phases out of Case 1.
  PlannerConstants strict;
  strict.case1_exponent_scale = 0.01;
  CHECK(count(plan_steps(2000, 2, 0.5, 1e12, strict), 1) < count(case2, 1));
}

TEST_CASE("small delta keeps every phase in Case 1") {
  for (std::size_t f : {1u, 2u, 100u}) {
    const auto plan = plan_phases(2, f, 0.25, std::pow(2.0, 20));
    for (const auto& phase : plan.phases) {
      CHECK(phase.case_tag == 1);
      CHECK(phase.length == 1);
    }
    CHECK(plan.predicted_mpc_rounds == 2 * (plan.k + 1));
  }
}

TEST_CASE("planner rounds grow more slowly than the schedule") {
  const double n = std::pow(2.0, 20);
  const auto lo = plan_phases(std::size_t{1} << 8, 2, 0.25, n);
  const auto hi = plan_phases(std::size_t{1} << 16, 2, 0.25, n);
  CHECK(static_cast<double>(hi.predicted_mpc_rounds) /
            static_cast<double>(lo.predicted_mpc_rounds) <
        static_cast<double>(hi.k) / static_cast<double>(lo.k));
}

TEST_CASE("planner rejects a single-vertex universe") {
  CHECK_THROWS_AS(plan_phases(4, 2, 0.25, 1.0), Error);
  CHECK_THROWS_AS(plan_phases(4, 2, 0.7, 100.0), Error);
}

TEST_CASE("phase simulation reproduces the bucketed cover") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = generate_random_instance(30, 200, 3, seed);
    Rng a = make_stream(seed, 0);
    Rng b = make_stream(seed, 0);
    const auto run = simulate_mpc_f_approx(inst, 0.2, a);
    const auto direct = f_approx_bucketed(inst, 0.2, b);
    CHECK(run.solve.cover.sets == direct.cover.sets);
    CHECK(verify_cover(inst, run.solve.cover).valid);
    CHECK(run.report.simulated_rounds == run.report.plan.predicted_mpc_rounds);
    REQUIRE_FALSE(run.report.phases.empty());
    CHECK(run.report.phases.back().cumulative_rounds ==
          run.report.simulated_rounds);
  }
}

TEST_CASE("with unit phases the report follows the step-by-step run") {
  const auto inst = generate_random_instance(20, 100, 2, 4);
  Rng rng(3);
  const auto run = simulate_mpc_f_approx(inst, 0.25, rng);
  const auto& plan = run.report.plan;
  REQUIRE(plan.phases.size() == plan.k + 1);
  CHECK(run.report.simulated_rounds == 2 * (plan.k + 1));
  const Schedule schedule = Schedule::outer(inst.delta(), 0.25);
  std::size_t live_before = inst.num_elements();
  for (std::size_t x = 0; x < run.report.phases.size(); ++x) {
    const auto& rec = run.report.phases[x];
    CHECK(rec.r == 1);
    CHECK(rec.start_step == plan.k - x);
    CHECK(rec.sampled_prob_start == schedule[rec.start_step]);
    CHECK(rec.sampled_prob_end == rec.sampled_prob_start);
    CHECK(rec.live_elements <= live_before);
    CHECK(rec.relevant_elements <= rec.live_elements);
    live_before = rec.live_elements;
  }
}

TEST_CASE("degree drop and relevant-subgraph size across seeds") {
  // Relevant elements of a phase have their bucket inside it, which a live
  // element does with probability at most r * p_end. The check is Markov's
  // inequality at factor 3 applied to each seed's total over its phases.
  const auto inst = generate_random_instance(256, 4096, 3, 42);
  std::size_t drop_ok = 0;
  std::size_t markov_ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng = make_stream(7, seed);
    const auto run = simulate_mpc_f_approx(inst, 0.25, rng);
    drop_ok += run.report.degree_drop_holds() ? 1 : 0;
    double relevant = 0, bound = 0;
    std::size_t phase_misses = 0;
    for (const auto& rec : run.report.phases) {
      const double expected_cap = static_cast<double>(rec.r) *
                                  rec.sampled_prob_end *
                                  static_cast<double>(rec.live_elements);
      relevant += static_cast<double>(rec.relevant_elements);
      bound += 3 * expected_cap;
      if (static_cast<double>(rec.relevant_elements) > 3 * expected_cap) {
        ++phase_misses;
      }
      CHECK(rec.degree_bound ==
            doctest::Approx(kDegreeDropConstant *
                            std::log(static_cast<double>(inst.num_vertices())) /
                            rec.sampled_prob_end));
    }
    markov_ok += relevant <= bound ? 1 : 0;
    // Per phase, Markov allows at most a third of phases to miss on average.
    CHECK(3 * phase_misses <= run.report.phases.size());
  }
  CHECK(drop_ok >= 95);
  CHECK(markov_ok >= 95);
}

TEST_CASE("sparsification") {
  const auto hg = test_support::load_hypergraph("rank3.hg");
  Rng rng(1);
  const auto none = sparsify_hypergraph(hg, 0.0, rng);
  CHECK(none.kept.empty());
  CHECK(none.non_isolated == 0);

  const auto all = sparsify_hypergraph(hg, 1.0, rng);
  CHECK(all.kept.size() == hg.num_edges());
  std::size_t touched = 0;
  for (VertexId v = 0; v < hg.num_vertices(); ++v) {
    touched += hg.incident_edges(v).empty() ? 0 : 1;
  }
  CHECK(all.non_isolated == touched);

  CHECK_THROWS_AS(sparsify_hypergraph(hg, 1.5, rng), Error);

  const auto big = generate_random_hypergraph(40, 60, 3, 2);
  RunningStats stats;
  for (std::uint64_t t = 0; t < 10000; ++t) {
    Rng r = make_stream(4, t);
    stats.add(static_cast<double>(sparsify_hypergraph(big, 0.1, r).non_isolated));
  }
  CHECK(stats.mean() <= 0.1 * big.avg_rank() * 60 + stats.ci95());
}

TEST_CASE("degree estimation with full sampling sees exact sizes") {
  const auto inst = generate_random_instance(12, 60, 2, 8);
  const double eps = 0.25;
  const auto top = static_cast<std::size_t>(
      floor_guarded(log_one_plus(static_cast<double>(inst.delta()), eps)));
  for (std::size_t round = 0; round <= top; ++round) {
    Rng rng(round);
    const auto trace = simulate_degree_estimation(inst, eps, round, rng);
    CHECK(trace.q == 1.0);
    CHECK(trace.threshold == doctest::Approx(std::pow(1 + eps, round)));
    for (const auto& batch : trace.batches) {
      for (const auto& chosen : batch.chosen) {
        CHECK(chosen.estimate == static_cast<double>(chosen.true_residual));
        CHECK(chosen.estimate >= trace.threshold - 1e-9);
      }
    }
  }
  Rng rng(1);
  CHECK_THROWS_AS(simulate_degree_estimation(inst, eps, top + 1, rng), Error);
}

TEST_CASE("degree estimates are running minima") {
  const auto inst = generate_random_instance(16, 1 << 13, 2, 5);
  Rng rng(2);
  const auto trace = simulate_degree_estimation(inst, 0.5, 10, rng);
  REQUIRE(trace.estimates.size() >= 2);
  for (std::size_t x = 1; x < trace.estimates.size(); ++x) {
    for (std::size_t s = 0; s < inst.num_sets(); ++s) {
      CHECK(trace.estimates[x][s] <= trace.estimates[x - 1][s]);
    }
  }
}

TEST_CASE("sampled estimates rarely admit undersized sets") {
  const double eps = 0.5;
  const auto inst = generate_random_instance(16, 1 << 16, 2, 3);
  const auto top = static_cast<std::size_t>(
      floor_guarded(log_one_plus(static_cast<double>(inst.delta()), eps)));
  const double floor_size = std::pow(1 + eps, static_cast<double>(top) - 1);
  std::size_t batches = 0, good = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng = make_stream(11, seed);
    const auto trace = simulate_degree_estimation(inst, eps, top, rng);
    CHECK(trace.q < 1.0);
    for (const auto& batch : trace.batches) {
      ++batches;
      bool ok = true;
      for (const auto& c : batch.chosen) {
        ok = ok && static_cast<double>(c.true_residual) >= floor_size;
      }
      good += ok ? 1 : 0;
    }
  }
  REQUIRE(batches > 0);
  CHECK(static_cast<double>(good) >= 0.99 * static_cast<double>(batches));
}

TEST_CASE("amplification") {
  const auto inst = generate_random_instance(15, 50, 3, 2);
  const auto solver = make_cover_solver(CoverAlgorithm::kOnline);

  const auto single = amplify_to_whp(solver, inst, 0.1, 1, 9);
  Rng rng = make_stream(9, 0);
  CHECK(single.best.cover.sets == solver(inst, 0.1, rng).cover.sets);
  CHECK(single.best_copy == 0);

  const double n = static_cast<double>(inst.num_vertices());
  CHECK(default_copies(n, 0.1) ==
        static_cast<std::size_t>(std::ceil(std::log(n) / 0.1)));
  const auto many = amplify_to_whp(solver, inst, 0.1, default_copies(n, 0.1), 9);
  const double mean =
      std::accumulate(many.sizes.begin(), many.sizes.end(), 0.0) /
      static_cast<double>(many.sizes.size());
  CHECK(static_cast<double>(many.best.cover.size()) <= mean);
  CHECK(many.sizes[many.best_copy] == many.best.cover.size());

  CHECK_THROWS_AS(amplify_to_whp(solver, inst, 0.1, 0, 1), Error);

  std::size_t exceeded = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto corpus_inst = generate_random_instance(12 + i % 10, 40, 3, 500 + i);
    const auto opt = exact_min_cover(corpus_inst);
    const auto best = amplify_to_whp(
        solver, corpus_inst, 0.1,
        default_copies(static_cast<double>(corpus_inst.num_vertices()), 0.1), i);
    if (static_cast<double>(best.best.cover.size()) >
        (1 + 3 * 0.1) * 3 * static_cast<double>(opt)) {
      ++exceeded;
    }
  }
  CHECK(exceeded == 0);
}

TEST_CASE("matching amplification keeps the largest matching") {
  const auto hg = test_support::load_hypergraph("rank3.hg");
  const MatchingSolver solver = hypergraph_matching;
  const auto amp = amplify_matching_to_whp(solver, hg, 0.1, 12, 4);
  for (std::size_t s : amp.sizes) CHECK(s <= amp.best.matching.size());
  CHECK(verify_matching(hg, amp.best.matching).valid);
}

TEST_CASE("phase CSV output") {
  std::ostringstream header;
  write_phase_csv_header(header);
  CHECK(header.str() ==
        "phase_index,case,r_j,sampled_prob_start,relevant_elements,max_ball,"
        "residual_degree_after,cumulative_rounds\n");

  std::ostringstream empty;
  write_phase_csv_rows(MpcReport{}, empty);
  CHECK(empty.str() == "0,0,0,0,0,0,0,0\n");

  std::ostringstream plan_rows;
  write_plan_csv_rows(PhasePlan{}, plan_rows);
  CHECK(plan_rows.str() == "0,0,0,0,,,,0\n");

  const auto inst = generate_random_instance(10, 30, 2, 1);
  Rng rng(1);
  const auto run = simulate_mpc_f_approx(inst, 0.25, rng);
  std::ostringstream rows;
  write_phase_csv_rows(run.report, rows);
  std::size_t lines = 0;
  for (char c : rows.str()) lines += c == '\n' ? 1 : 0;
  CHECK(lines == run.report.phases.size());
}

}  // TEST_SUITE
