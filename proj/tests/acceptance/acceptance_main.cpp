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

// Acceptance suite: one pass/fail line per headline criterion. Run all of
// them, or a single one with --criterion N.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cover_sampler/cover.hpp"
#include "cover_sampler/instance.hpp"
#include "cover_sampler/matching.hpp"
#include "cover_sampler/mpc_sim.hpp"
#include "cover_sampler/oracle.hpp"
#include "cover_sampler/parallel.hpp"
#include "cover_sampler/rng.hpp"
#include "cover_sampler/schedule.hpp"
#include "cover_sampler/ssp.hpp"
#include "cover_sampler/stats.hpp"
#include "support/oracles.hpp"

namespace cs = cover_sampler;

namespace {

constexpr std::uint64_t kMasterSeed = 20260101;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double time_limit_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// ---------------------------------------------------------------------------
// Shared corpora.

struct CorpusEntry {
  cs::SetCoverInstance instance;
  std::size_t opt;
};

const std::vector<CorpusEntry>& cover_corpus() {
  static const std::vector<CorpusEntry> corpus = [] {
    std::vector<CorpusEntry> out;
    for (std::uint64_t i = 0; i < 100; ++i) {
      auto inst = cs::generate_random_instance(10 + i % 16, 30 + (i * 7) % 51,
                                               2 + i % 3, i);
      const auto opt = cs::exact_min_cover(inst);
      out.push_back({std::move(inst), opt});
    }
    return out;
  }();
  return corpus;
}

std::vector<cs::Hypergraph> matching_corpus(std::size_t rank) {
  std::vector<cs::Hypergraph> out;
  for (std::uint64_t i = 0; i < 30; ++i) {
    out.push_back(cs::generate_random_hypergraph(
        3 * rank + i % 15, 8 + i % 18, rank, 100 * rank + i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// 1. Schedule values.

Outcome schedule_exactness() {
  Outcome o;
  int checked = 0;
  auto expect = [&](bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      o.pass = false;
      o.detail += what + "; ";
    }
  };
  auto near = [](double a, double b, double tol) { return std::abs(a - b) <= tol; };

  expect(cs::compute_b(0.5) == 3, "b(0.5)");
  expect(cs::compute_b(0.1) == 8, "b(0.1)");
  expect(cs::compute_b(0.25) == 4, "b(0.25)");
  for (double eps : {0.1, 0.25, 0.5}) {
    const cs::Schedule s(eps, 40);
    expect(s.probability(0) == 1.0, fmt("p_0 at eps=%g", eps));
    expect(near(s.probability(static_cast<std::size_t>(s.b())), 1 / (1 + eps),
                1e-15),
           fmt("p_b at eps=%g", eps));
    for (std::size_t i = 0; i <= 40; ++i) {
      expect(near(s.probability(i), test_support::reference_p(eps, i), 1e-15),
             fmt("p_%zu at eps=%g", i, eps));
    }
  }
  expect(near(cs::Schedule(0.5, 10).probability(7), 0.2962962962962963, 1e-12),
         "p_7 at eps=0.5");
  expect(cs::schedule_length_outer(1, 0.5) == 6, "k(1, 0.5)");
  expect(cs::schedule_length_outer(8, 0.5) == 21, "k(8, 0.5)");
  expect(cs::schedule_length_outer(10, 0.1) == 392, "k(10, 0.1)");
  expect(cs::schedule_length_outer(10, 0.25) == 68, "k(10, 0.25)");
  expect(cs::schedule_length_inner(1, 0.5) == 6, "k_inner(1, 0.5)");
  expect(cs::schedule_length_inner(2, 0.5) == 12, "k_inner(2, 0.5)");

  expect(cs::Schedule(0.5, 0).bucket_distribution() == std::vector<double>{1.0},
         "buckets k=0");
  expect(near(cs::Schedule(0.5, 6).bucket_distribution()[6], 1 / 2.25, 1e-12),
         "bucket 6 at eps=0.5");
  const double hand[] = {2.68739e-05, 0.0001074954, 0.0005374771,
                         0.0026873856, 0.013436928, 0.02985984,
                         0.082944,     0.2304,       0.64};
  const auto quarter = cs::Schedule(0.25, 8).bucket_distribution();
  for (std::size_t i = 0; i < 9; ++i) {
    expect(near(quarter[i], hand[i], 1e-10), fmt("bucket %zu at eps=0.25", i));
  }

  double worst = 0;
  for (double eps : {0.1, 0.25, 0.5}) {
    for (std::size_t delta : {1u, 8u, 50u, 1000u, 1u << 20}) {
      const auto bd = cs::Schedule::outer(delta, eps).bucket_distribution();
      double sum = 0;
      for (double x : bd) sum += x;
      worst = std::max(worst, std::abs(sum - 1));
      expect(std::all_of(bd.begin(), bd.end(),
                         [](double x) { return x >= 0 && x <= 1; }),
             "bucket range");
    }
  }
  expect(worst <= 1e-12, fmt("bucket sum error %.3g", worst));
  o.detail = fmt("%d checks, max |sum-1| = %.2e", checked, worst) +
             (o.detail.empty() ? "" : "; failed: " + o.detail);
  return o;
}

// ---------------------------------------------------------------------------
// 2 and 3. Sampling-process bounds over the adversary grid.

Outcome expected_rz_grid() {
  Outcome o;
  double worst_margin = -1e9;
  std::string worst_cell;
  std::uint64_t cell = 0;
  for (double eps : {0.05, 0.1, 0.25, 0.5}) {
    for (std::size_t n : {10u, 100u, 1000u}) {
      for (const auto& adv : cs::ssp::builtin_adversaries()) {
        const auto cfg = cs::ssp::SspConfig::with_min_steps(
            n, eps, adv, cs::derive_seed(kMasterSeed, cell++));
        const auto est = cs::ssp::estimate_expected_rz(cfg, 100000);
        const double bound = 1 + 4 * eps;
        const double margin = (est.mean - est.ci95) - bound;
        if (margin > 0) o.pass = false;
        if (margin > worst_margin) {
          worst_margin = margin;
          worst_cell = fmt("eps=%g n=%zu %s: %.4f +- %.4f vs %.2f", eps, n,
                           adv.name().c_str(), est.mean, est.ci95, bound);
        }
      }
    }
  }
  o.detail = fmt("%llu cells; tightest ", static_cast<unsigned long long>(cell)) +
             worst_cell;
  return o;
}

Outcome conditional_multiplicity_grid() {
  Outcome o;
  double worst_margin = -1e9;
  std::string worst_cell;
  std::uint64_t cell = 0;
  for (double eps : {0.05, 0.1, 0.25}) {
    for (std::size_t n : {10u, 100u, 1000u}) {
      for (const auto& adv : cs::ssp::builtin_adversaries()) {
        auto cfg = cs::ssp::SspConfig::with_min_steps(
            n, eps, adv, cs::derive_seed(kMasterSeed + 1, cell++));
        cfg.marked = 0;
        const auto est = cs::ssp::estimate_conditional_multiplicity(cfg, 1000000);
        const double bound = 6 * eps;
        const double margin = (est.p_hat - est.ci95) - bound;
        if (margin > 0) o.pass = false;
        if (margin > worst_margin) {
          worst_margin = margin;
          worst_cell = fmt("eps=%g n=%zu %s: %.4f +- %.4f vs %.2f (%zu accepted)",
                           eps, n, adv.name().c_str(), est.p_hat, est.ci95,
                           bound, est.accepted);
        }
      }
    }
  }
  o.detail = fmt("%llu cells; tightest ", static_cast<unsigned long long>(cell)) +
             worst_cell;
  return o;
}

// ---------------------------------------------------------------------------
// 4 and 5. Approximation ratios on the random corpus.

Outcome f_approx_ratio() {
  Outcome o;
  const double eps = 0.1;
  double worst = 0;
  std::size_t invalid = 0;
  for (auto alg : {cs::CoverAlgorithm::kOnline, cs::CoverAlgorithm::kBucketed}) {
    const auto solver = cs::make_cover_solver(alg);
    for (std::size_t i = 0; i < cover_corpus().size(); ++i) {
      const auto& [inst, opt] = cover_corpus()[i];
      const double bound = (1 + 4 * eps) * static_cast<double>(inst.freq());
      const auto report = cs::measure_ratio(solver, inst, eps, 200,
                                            cs::derive_seed(kMasterSeed + 4, i),
                                            bound);
      invalid += report.invalid_runs;
      if (!report.pass) o.pass = false;
      worst = std::max(worst, report.mean_ratio / bound);
    }
  }
  if (invalid > 0) o.pass = false;
  o.detail = fmt("100 instances x 2 variants x 200 runs; max mean ratio / bound "
                 "= %.3f; invalid covers = %zu",
                 worst, invalid);
  return o;
}

Outcome hdelta_ratio() {
  Outcome o;
  const double eps = 0.1;
  const double delta = 0.1;
  double worst_exact = 0, worst_noisy = 0;
  std::size_t batches = 0, ratio_violations = 0, invalid = 0;
  for (std::size_t i = 0; i < cover_corpus().size(); ++i) {
    const auto& [inst, opt] = cover_corpus()[i];
    const double h = cs::harmonic(inst.delta());
    const double exact_bound = (1 + eps) * (1 + 4 * eps) * h;
    const double noisy_bound = (1 + delta) * exact_bound;
    cs::RunningStats exact_ratio, noisy_ratio;
    for (std::uint64_t t = 0; t < 200; ++t) {
      for (int noisy = 0; noisy < 2; ++noisy) {
        cs::HdeltaTrace trace;
        cs::Rng rng = cs::make_stream(cs::derive_seed(kMasterSeed + 5, i), t);
        cs::ExactSizeOracle exact_oracle;
        cs::NoisyExactSizeOracle noisy_oracle(delta,
                                              cs::derive_seed(kMasterSeed + 50 + i, t));
        cs::SizeOracle& oracle =
            noisy ? static_cast<cs::SizeOracle&>(noisy_oracle) : exact_oracle;
        const auto result = cs::hdelta_cover(inst, eps, rng, oracle, {}, &trace);
        if (!cs::verify_cover(inst, result.cover).valid) ++invalid;
        const double factor = (1 + eps) * (1 + eps) * (noisy ? 1 + delta : 1.0);
        for (const auto& b : trace.batches) {
          ++batches;
          if (static_cast<double>(b.min_residual_in_batch) * factor <
              static_cast<double>(b.max_live_residual) - 1e-9) {
            ++ratio_violations;
          }
        }
        const double ratio = static_cast<double>(result.cover.size()) /
                             static_cast<double>(opt);
        (noisy ? noisy_ratio : exact_ratio).add(ratio);
      }
    }
    if (exact_ratio.mean() - exact_ratio.ci95() > exact_bound) o.pass = false;
    if (noisy_ratio.mean() - noisy_ratio.ci95() > noisy_bound) o.pass = false;
    worst_exact = std::max(worst_exact, exact_ratio.mean() / exact_bound);
    worst_noisy = std::max(worst_noisy, noisy_ratio.mean() / noisy_bound);
  }
  if (ratio_violations > 0 || invalid > 0) o.pass = false;
  o.detail = fmt("max mean ratio / bound: exact %.3f, noisy(0.1) %.3f; "
                 "%zu batches, %zu size-ratio violations, %zu invalid covers",
                 worst_exact, worst_noisy, batches, ratio_violations, invalid);
  return o;
}

// ---------------------------------------------------------------------------
// 6. Matching.

Outcome matching_ratio() {
  Outcome o;
  const double eps = 0.01;
  const cs::MatchingSolver solver = cs::hypergraph_matching;
  std::size_t invalid = 0, instances = 0;
  double tightest = 1e9;
  for (std::size_t rank : {2u, 3u}) {
    const double bound =
        (1 - 6 * eps * static_cast<double>(rank)) / static_cast<double>(rank);
    const auto corpus = matching_corpus(rank);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto report = cs::measure_matching_ratio(
          solver, corpus[i], eps, 200, cs::derive_seed(kMasterSeed + 6, 10 * i + rank),
          bound);
      ++instances;
      invalid += report.invalid_runs;
      if (!report.pass) o.pass = false;
      tightest = std::min(tightest, report.mean_ratio / bound);
    }
  }
  if (invalid > 0) o.pass = false;
  o.detail = fmt("%zu hypergraphs x 200 runs; min mean |M|/OPT over bound = "
                 "%.3f; invalid matchings = %zu",
                 instances, tightest, invalid);
  return o;
}

// ---------------------------------------------------------------------------
// 7. Sparsification.

Outcome sparsification() {
  Outcome o;
  std::vector<std::pair<std::string, cs::Hypergraph>> graphs;
  graphs.emplace_back("rank3 fixture", test_support::load_hypergraph("rank3.hg"));
  graphs.emplace_back("uniform rank 4",
                      cs::generate_random_hypergraph(50, 80, 4, 71));
  {
    std::vector<std::vector<cs::VertexId>> edges;
    cs::Rng rng(72);
    for (std::size_t e = 0; e < 90; ++e) {
      const std::size_t size = 2 + e % 4;
      std::vector<cs::VertexId> edge;
      while (edge.size() < size) {
        const auto v = static_cast<cs::VertexId>(cs::uniform_index(rng, 60));
        if (std::find(edge.begin(), edge.end(), v) == edge.end()) edge.push_back(v);
      }
      edges.push_back(std::move(edge));
    }
    graphs.emplace_back("mixed ranks 2-5",
                        cs::Hypergraph::from_edges(60, std::move(edges)));
  }
  double tightest = -1e9;
  std::uint64_t cell = 0;
  for (const auto& [name, hg] : graphs) {
    for (double p : {0.05, 0.1, 0.3}) {
      cs::RunningStats stats;
      const std::uint64_t seed = cs::derive_seed(kMasterSeed + 7, cell++);
      for (std::uint64_t t = 0; t < 10000; ++t) {
        cs::Rng rng = cs::make_stream(seed, t);
        stats.add(static_cast<double>(cs::mpc::sparsify_hypergraph(hg, p, rng).non_isolated));
      }
      const double bound = p * hg.avg_rank() * static_cast<double>(hg.num_edges());
      const double slack = 3 * stats.standard_error();
      if (stats.mean() > bound + slack) o.pass = false;
      tightest = std::max(tightest, stats.mean() / bound);
    }
  }
  o.detail = fmt("9 cells x 10^4 trials; max mean / (p h|E|) = %.3f", tightest);
  return o;
}

// ---------------------------------------------------------------------------
// 8. Work counters.

Outcome work_invariants() {
  Outcome o;
  std::size_t runs = 0, over = 0;
  for (std::size_t i = 0; i < cover_corpus().size(); ++i) {
    const auto& inst = cover_corpus()[i].instance;
    for (std::uint64_t t = 0; t < 200; ++t) {
      cs::Rng rng = cs::make_stream(cs::derive_seed(kMasterSeed + 8, i), t);
      const auto c = cs::f_approx_bucketed(inst, 0.1, rng).counters;
      ++runs;
      if (c.edge_touches > 2 * inst.num_edges()) ++over;
    }
  }
  if (over > 0) o.pass = false;

  std::vector<double> ratios;
  std::string sweep;
  for (int x = 4; x <= 12; ++x) {
    const std::size_t elements = std::size_t{32} << x;
    const auto inst = cs::generate_random_instance(64, elements, 2,
                                                   cs::derive_seed(kMasterSeed + 80, x));
    cs::RunningStats ratio;
    for (std::uint64_t t = 0; t < 3; ++t) {
      cs::Rng rng = cs::make_stream(cs::derive_seed(kMasterSeed + 81, x), t);
      const auto c = cs::hdelta_cover(inst, 0.1, rng).counters;
      ratio.add(static_cast<double>(c.set_touches) /
                static_cast<double>(inst.num_vertices() + inst.num_edges()));
    }
    ratios.push_back(ratio.mean());
    sweep += fmt("%s2^%d:%.3f", sweep.empty() ? "" : " ", x, ratio.mean());
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  const double spread = *hi / *lo;
  if (!(spread < 4)) o.pass = false;
  o.detail = fmt("edge_touches > 2m on %zu of %zu bucketed runs; "
                 "set_touches/(n+m) max/min = %.3f over delta ",
                 over, runs, spread) + sweep;
  return o;
}

// ---------------------------------------------------------------------------
// 9. Online vs bucketed distributions.

Outcome online_vs_bucketed() {
  Outcome o;
  const auto inst = cs::generate_random_instance(10, 40, 3, 9);
  std::vector<std::int64_t> online(10000), bucketed(10000);
  cs::parallel_for(online.size(), [&](std::size_t t) {
    cs::Rng a = cs::make_stream(kMasterSeed + 9, t);
    cs::Rng b = cs::make_stream(kMasterSeed + 90, t);
    online[t] = static_cast<std::int64_t>(cs::f_approx_online(inst, 0.1, a).cover.size());
    bucketed[t] =
        static_cast<std::int64_t>(cs::f_approx_bucketed(inst, 0.1, b).cover.size());
  });
  const double d = cs::ks_distance(online, bucketed);
  o.pass = d < 0.05;
  o.detail = fmt("KS distance %.4f over 10^4 runs each", d);
  return o;
}

// ---------------------------------------------------------------------------
// 10. MPC scaling trend and degree drop.

Outcome planner_trend() {
  Outcome o;
  const double n = std::pow(2.0, 20);
  std::vector<double> sqrt_x, lin_x, rounds;
  std::string row;
  std::size_t k8 = 0, k16 = 0, r8 = 0, r16 = 0;
  for (int x = 4; x <= 16; x += 2) {
    const auto plan = cs::mpc::plan_phases(std::size_t{1} << x, 2, 0.25, n);
    sqrt_x.push_back(std::sqrt(static_cast<double>(x)));
    lin_x.push_back(static_cast<double>(x));
    rounds.push_back(static_cast<double>(plan.predicted_mpc_rounds));
    std::size_t case1 = 0;
    for (const auto& p : plan.phases) case1 += p.case_tag == 1 ? 1 : 0;
    row += fmt("%s2^%d:%zu(k=%zu,case1=%zu/%zu)", row.empty() ? "" : " ", x,
               plan.predicted_mpc_rounds, plan.k, case1, plan.phases.size());
    if (x == 8) { k8 = plan.k; r8 = plan.predicted_mpc_rounds; }
    if (x == 16) { k16 = plan.k; r16 = plan.predicted_mpc_rounds; }
  }
  const auto sqrt_fit = cs::fit_linear(sqrt_x, rounds);
  const auto lin_fit = cs::fit_linear(lin_x, rounds);
  o.pass = sqrt_fit.residual_norm < lin_fit.residual_norm;
  o.detail = fmt("residual norm sqrt-fit %.3f vs linear-fit %.3f; "
                 "rounds ratio 2^16/2^8 = %.3f vs k ratio %.3f; ",
                 sqrt_fit.residual_norm, lin_fit.residual_norm,
                 static_cast<double>(r16) / static_cast<double>(r8),
                 static_cast<double>(k16) / static_cast<double>(k8)) + row;
  return o;
}

Outcome degree_drop() {
  Outcome o;
  const auto inst = cs::generate_random_instance(256, 4096, 3, 42);
  const double log_n = std::log(static_cast<double>(inst.num_vertices()));
  std::vector<char> holds(100, 0);
  std::vector<double> worst(100, 0.0);
  cs::parallel_for(holds.size(), [&](std::size_t seed) {
    cs::Rng rng = cs::make_stream(kMasterSeed + 10, seed);
    const auto run = cs::mpc::simulate_mpc_f_approx(inst, 0.25, rng);
    holds[seed] = run.report.degree_drop_holds() ? 1 : 0;
    for (const auto& rec : run.report.phases) {
      worst[seed] = std::max(worst[seed], static_cast<double>(rec.residual_degree_after) *
                                              rec.sampled_prob_end / log_n);
    }
  });
  const auto ok = static_cast<std::size_t>(std::count(holds.begin(), holds.end(), 1));
  o.pass = ok >= 95;
  o.detail = fmt("degree drop held on %zu/100 seeds; empirical max of "
                 "residual * p / ln n = %.3f (constant %.0f)",
                 ok, *std::max_element(worst.begin(), worst.end()),
                 cs::mpc::kDegreeDropConstant);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  std::string only;
  app.add_option("--criterion", only, "Run one criterion (1..10, 10a, 10b)");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {"1", "schedule values match hand-derived ones", 1, schedule_exactness},
      {"2", "E|R_z| <= 1+4eps on the adversary grid", 120, expected_rz_grid},
      {"3", "P(|R_z|>1 | a in R_z) <= 6eps on the adversary grid", 600,
       conditional_multiplicity_grid},
      {"4", "f-approximation ratio <= (1+4eps) f, all covers valid", 300,
       f_approx_ratio},
      {"5", "H_Delta ratio and batch size-ratio invariant", 300, hdelta_ratio},
      {"6", "matching size >= (1-6 eps h)/h OPT, all matchings valid", 300,
       matching_ratio},
      {"7", "sparsified non-isolated count <= p h|E| + 3 sigma", 60,
       sparsification},
      {"8", "linear work counters", 120, work_invariants},
      {"9", "online and bucketed cover sizes agree (KS < 0.05)", 60,
       online_vs_bucketed},
      {"10a", "planner rounds follow sqrt(log Delta) better than log Delta",
       180, planner_trend},
      {"10b", "degree drop on >= 95/100 seeds", 180, degree_drop},
  };

  bool any = false;
  bool all_pass = true;
  bool ten_pass = true;
  bool ten_ran = false;
  for (const auto& c : criteria) {
    const bool selected = only.empty() || only == c.id ||
                          (only == "10" && c.id.rfind("10", 0) == 0);
    if (!selected) continue;
    any = true;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool in_time = elapsed <= c.time_limit_s;
    const bool pass = outcome.pass && in_time;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": "
              << c.title << " | " << outcome.detail
              << fmt(" | %.1fs (limit %.0fs)%s", elapsed, c.time_limit_s,
                     in_time ? "" : " OVER TIME LIMIT")
              << std::endl;
    all_pass = all_pass && pass;
    if (c.id.rfind("10", 0) == 0) {
      ten_ran = true;
      ten_pass = ten_pass && pass;
    }
  }
  if (!any) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  if (ten_ran && (only.empty() || only == "10")) {
    std::cout << (ten_pass ? "PASS" : "FAIL")
              << " criterion 10: MPC scaling trend and degree drop (10a and 10b)"
              << std::endl;
  }
  return all_pass ? 0 : 1;
}
