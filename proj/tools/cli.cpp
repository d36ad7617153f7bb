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

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cover_sampler/cover.hpp"
#include "cover_sampler/error.hpp"
#include "cover_sampler/instance.hpp"
#include "cover_sampler/matching.hpp"
#include "cover_sampler/mpc_sim.hpp"
#include "cover_sampler/oracle.hpp"
#include "cover_sampler/rng.hpp"
#include "cover_sampler/schedule.hpp"
#include "cover_sampler/ssp.hpp"
#include "cover_sampler/stats.hpp"

namespace cover_sampler::cli {

namespace {

using nlohmann::json;

struct Input {
  std::optional<SetCoverInstance> instance;
  std::optional<Hypergraph> hypergraph;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Dispatches on the first non-comment line: "p sc ..." or "p hg ...".
Input parse_any(const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == 'c') continue;
    std::istringstream head(line.substr(first));
    std::string p, kind;
    head >> p >> kind;
    std::istringstream in(text);
    Input input;
    if (p == "p" && kind == "sc") {
      input.instance = parse_instance(in);
    } else if (p == "p" && kind == "hg") {
      input.hypergraph = parse_hypergraph(in);
    } else {
      throw Error(ErrorCode::kParse, "unknown header '" + line + "'");
    }
    return input;
  }
  throw Error(ErrorCode::kParse, "missing header line");
}

// "S,E,F" -> random instance with S sets, E elements, element degree F.
SetCoverInstance generate_from_spec(const std::string& spec,
                                    std::uint64_t seed) {
  std::vector<std::size_t> parts;
  std::istringstream in(spec);
  std::string field;
  while (std::getline(in, field, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoul(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument,
                  "--gen expects S,E,F, got '" + spec + "'");
    }
  }
  if (parts.size() != 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "--gen expects S,E,F, got '" + spec + "'");
  }
  return generate_random_instance(parts[0], parts[1], parts[2], seed);
}

Input load_input(const std::string& path, const std::string& gen,
                 std::uint64_t seed) {
  if (!path.empty() && !gen.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "give either an input file or --gen, not both");
  }
  if (!gen.empty()) return Input{generate_from_spec(gen, seed), std::nullopt};
  if (path.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no input file or --gen given");
  }
  return parse_any(read_file(path));
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string alg = "f-bucketed";
  double eps = 0.1;
  std::uint64_t seed = 1;
  bool calibrated = false;
  double size_oracle_delta = 0.0;
  std::size_t copies = 1;
  std::optional<double> target_eps;
  std::string format = "csv";
  std::string gen;
  std::string input;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Input input = load_input(a.input, a.gen, a.seed);
  const SolverOptions options{a.calibrated};

  json row;
  row["algorithm"] = a.alg;
  row["eps"] = a.eps;
  row["seed"] = a.seed;
  row["copies"] = a.copies;
  CostCounters counters;
  std::size_t size = 0;
  bool valid = false;
  std::optional<std::size_t> rounds;
  double run_eps = a.eps;

  if (a.copies == 0) {
    throw Error(ErrorCode::kInvalidArgument, "--copies must be at least 1");
  }

  if (a.alg == "match") {
    const Hypergraph hg = input.hypergraph ? *input.hypergraph
                                           : to_hypergraph(*input.instance);
    if (a.target_eps) {
      run_eps = hg.rank() > 0 ? matching_eps_for_target(*a.target_eps,
                                                        hg.rank())
                              : *a.target_eps;
    }
    validate_epsilon(run_eps);
    const MatchingSolver solver = [](const Hypergraph& h, double e, Rng& r) {
      return hypergraph_matching(h, e, r);
    };
    const auto best = mpc::amplify_matching_to_whp(solver, hg, run_eps,
                                                   a.copies, a.seed);
    size = best.best.matching.size();
    counters = best.best.counters;
    valid = verify_matching(hg, best.best.matching).valid;
  } else {
    if (!input.instance) {
      throw Error(ErrorCode::kInvalidArgument,
                  "algorithm '" + a.alg + "' needs a set-cover input");
    }
    if (a.target_eps) {
      throw Error(ErrorCode::kInvalidArgument,
                  "--target-eps applies to --alg match only");
    }
    const SetCoverInstance& inst = *input.instance;
    run_eps = schedule_eps(a.eps, options);
    if (a.alg == "mpc-sim") {
      if (a.copies != 1) {
        throw Error(ErrorCode::kInvalidArgument,
                    "--copies is not supported with mpc-sim");
      }
      Rng rng = make_stream(a.seed, 0);
      const mpc::MpcRun run = mpc::simulate_mpc_f_approx(inst, run_eps, rng);
      size = run.solve.cover.size();
      counters = run.solve.counters;
      valid = verify_cover(inst, run.solve.cover).valid;
      rounds = run.report.simulated_rounds;
    } else {
      CoverSolver solver;
      if (a.alg == "f-online") {
        solver = make_cover_solver(CoverAlgorithm::kOnline, options);
      } else if (a.alg == "f-bucketed") {
        solver = make_cover_solver(CoverAlgorithm::kBucketed, options);
      } else if (a.alg == "hdelta") {
        const double delta = a.size_oracle_delta;
        if (delta > 0.0) {
          solver = [options, delta](const SetCoverInstance& i, double e,
                                    Rng& r) {
            NoisyExactSizeOracle oracle(delta, r());
            return hdelta_cover(i, e, r, oracle, options);
          };
        } else {
          solver = make_cover_solver(CoverAlgorithm::kHdelta, options);
        }
      } else {
        throw Error(ErrorCode::kInvalidArgument,
                    "unknown algorithm '" + a.alg + "'");
      }
      const auto best =
          mpc::amplify_to_whp(solver, inst, a.eps, a.copies, a.seed);
      size = best.best.cover.size();
      counters = best.best.counters;
      valid = verify_cover(inst, best.best.cover).valid;
    }
  }

  row["run_eps"] = run_eps;
  row["size"] = size;
  row["valid"] = valid;
  row["element_touches"] = counters.element_touches;
  row["set_touches"] = counters.set_touches;
  row["edge_touches"] = counters.edge_touches;
  row["steps_executed"] = counters.steps_executed;
  row["rebucket_events"] = counters.rebucket_events;
  row["simulated_rounds"] = rounds ? json(*rounds) : json(nullptr);

  if (a.format == "json") {
    out << row.dump(2) << '\n';
  } else {
    out << "algorithm,eps,run_eps,seed,copies,size,valid,element_touches,"
           "set_touches,edge_touches,steps_executed,rebucket_events,"
           "simulated_rounds\n";
    out << a.alg << ',' << fmt(a.eps) << ',' << fmt(run_eps) << ',' << a.seed
        << ',' << a.copies << ',' << size << ',' << (valid ? "true" : "false")
        << ',' << counters.element_touches << ',' << counters.set_touches
        << ',' << counters.edge_touches << ',' << counters.steps_executed
        << ',' << counters.rebucket_events << ','
        << (rounds ? std::to_string(*rounds) : std::string()) << '\n';
  }
  if (!valid) {
    err << "verification failed: output is not a valid "
        << (a.alg == "match" ? "matching" : "cover") << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}

// ------------------------------------------------------- verify-lemmas

struct VerifyArgs {
  std::string lemma = "all";
  std::optional<double> eps;
  std::optional<std::size_t> n;
  std::size_t trials = 20000;
  std::string adversary;
  std::uint64_t seed = 1;
  std::string format = "csv";
};

struct CheckRow {
  std::string lemma;
  std::string params;
  double estimate = 0.0;
  double ci95 = 0.0;
  double bound = 0.0;
  bool pass = false;
};

class VerifySuite {
 public:
  explicit VerifySuite(const VerifyArgs& args) : a_(args) {}

  std::vector<CheckRow> run() {
    const bool all = a_.lemma == "all";
    bool known = all;
    if (all || a_.lemma == "3.1") {
      known = true;
      ssp_rows(false);
    }
    if (all || a_.lemma == "3.3") {
      known = true;
      ssp_rows(true);
    }
    if (all || a_.lemma == "steps") {
      known = true;
      step_rows();
    }
    if (all || a_.lemma == "6.1") {
      known = true;
      sparsify_rows();
    }
    if (all || a_.lemma == "ratio") {
      known = true;
      ratio_rows();
    }
    if (!known) {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown lemma '" + a_.lemma +
                      "' (expected 3.1, 3.3, steps, 6.1, ratio or all)");
    }
    return rows_;
  }

 private:
  std::vector<double> eps_grid(bool conditional) const {
    if (a_.eps) return {*a_.eps};
    if (conditional) return {0.05, 0.1, 0.25};
    return {0.05, 0.1, 0.25, 0.5};
  }

  std::vector<ssp::AdversarySpec> adversaries() const {
    if (!a_.adversary.empty() && a_.adversary != "all") {
      return {ssp::parse_adversary(a_.adversary)};
    }
    // A single (eps, n) cell defaults to the identity adversary.
    if (a_.adversary.empty() && a_.eps && a_.n) {
      return {ssp::AdversarySpec{}};
    }
    return ssp::builtin_adversaries();
  }

  void ssp_rows(bool conditional) {
    const std::vector<std::size_t> sizes =
        a_.n ? std::vector<std::size_t>{*a_.n}
             : std::vector<std::size_t>{10, 100, 1000};
    for (double eps : eps_grid(conditional)) {
      for (std::size_t n : sizes) {
        for (const auto& adv : adversaries()) {
          auto config = ssp::SspConfig::with_min_steps(n, eps, adv, a_.seed);
          CheckRow row;
          row.params = "eps=" + fmt(eps) + " n=" + std::to_string(n) +
                       " adversary=" + adv.name();
          if (conditional) {
            const auto est =
                ssp::estimate_conditional_multiplicity(config, a_.trials);
            row.lemma = "3.3";
            row.estimate = est.p_hat;
            row.ci95 = est.ci95;
            row.bound = 6.0 * eps;
          } else {
            const auto est = ssp::estimate_expected_rz(config, a_.trials);
            row.lemma = "3.1";
            row.estimate = est.mean;
            row.ci95 = est.ci95;
            row.bound = 1.0 + 4.0 * eps;
          }
          row.pass = row.estimate - row.ci95 <= row.bound;
          rows_.push_back(row);
        }
      }
    }
  }

  void step_rows() {
    const std::vector<std::size_t> sizes =
        a_.n ? std::vector<std::size_t>{*a_.n}
             : std::vector<std::size_t>{1, 10, 100, 1000};
    for (double eps : eps_grid(false)) {
      for (std::size_t n : sizes) {
        const Schedule schedule(eps, ssp::min_steps(n, eps));
        // Constant sequence plus a seeded random non-increasing one.
        std::vector<std::size_t> constant(schedule.k() + 1, n);
        std::vector<std::size_t> shrinking(schedule.k() + 1, n);
        Rng rng = make_stream(a_.seed, n);
        for (std::size_t i = schedule.k(); i-- > 0;) {
          shrinking[i] = shrinking[i + 1];
          if (shrinking[i] > 0 && bernoulli(rng, 0.05)) {
            shrinking[i] = uniform_index(rng, shrinking[i] + 1);
          }
        }
        for (const auto* seq : {&constant, &shrinking}) {
          const auto report = ssp::check_step_lemmas(schedule, *seq);
          CheckRow row;
          row.lemma = "steps";
          row.params = "eps=" + fmt(eps) + " n=" + std::to_string(n) +
                       (seq == &constant ? " sequence=constant"
                                         : " sequence=shrinking");
          row.estimate = static_cast<double>(report.violations.size());
          row.bound = 0.0;
          row.pass = report.ok();
          rows_.push_back(row);
        }
      }
    }
  }

  void sparsify_rows() {
    const std::vector<Hypergraph> graphs = {
        generate_random_hypergraph(30, 60, 3, 11),
        generate_random_hypergraph(40, 80, 2, 12),
        generate_random_hypergraph(50, 40, 4, 13),
    };
    for (std::size_t g = 0; g < graphs.size(); ++g) {
      const Hypergraph& hg = graphs[g];
      for (double p : {0.05, 0.1, 0.3}) {
        RunningStats stats;
        for (std::size_t t = 0; t < a_.trials; ++t) {
          Rng rng = make_stream(a_.seed + g, t);
          stats.add(static_cast<double>(
              mpc::sparsify_hypergraph(hg, p, rng).non_isolated));
        }
        CheckRow row;
        row.lemma = "6.1";
        row.params = "graph=" + std::to_string(g) + " p=" + fmt(p);
        row.estimate = stats.mean();
        row.ci95 = 3.0 * stats.standard_error();
        row.bound = p * hg.avg_rank() * static_cast<double>(hg.num_edges());
        row.pass = row.estimate <= row.bound + row.ci95;
        rows_.push_back(row);
      }
    }
  }

  void ratio_rows() {
    const double eps = a_.eps.value_or(0.1);
    const std::size_t runs = 200;
    for (std::uint64_t i = 0; i < 5; ++i) {
      const auto inst = generate_random_instance(20, 60, 3, a_.seed + i);
      const double f_bound = (1.0 + 4.0 * eps) * static_cast<double>(inst.freq());
      const double h_bound = (1.0 + eps) * (1.0 + 4.0 * eps) *
                             harmonic(inst.delta());
      const struct {
        const char* name;
        CoverAlgorithm alg;
        double bound;
      } solvers[] = {{"f-bucketed", CoverAlgorithm::kBucketed, f_bound},
                     {"hdelta", CoverAlgorithm::kHdelta, h_bound}};
      for (const auto& s : solvers) {
        const auto rep = measure_ratio(make_cover_solver(s.alg), inst, eps,
                                       runs, a_.seed + i, s.bound);
        CheckRow row;
        row.lemma = "ratio";
        row.params = std::string("alg=") + s.name + " instance=" +
                     std::to_string(i) + " opt=" + std::to_string(rep.opt);
        row.estimate = rep.mean_ratio;
        row.ci95 = rep.ci95;
        row.bound = rep.bound;
        row.pass = rep.pass;
        rows_.push_back(row);
      }
    }
  }

  const VerifyArgs& a_;
  std::vector<CheckRow> rows_;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  if (a.trials < ssp::kMinTrials) {
    throw Error(ErrorCode::kInsufficientTrials,
                "need at least " + std::to_string(ssp::kMinTrials) +
                    " trials, got " + std::to_string(a.trials));
  }
  const std::vector<CheckRow> rows = VerifySuite(a).run();
  bool all_pass = true;
  if (a.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"lemma", r.lemma},
                     {"params", r.params},
                     {"estimate", r.estimate},
                     {"ci95", r.ci95},
                     {"bound", r.bound},
                     {"status", r.pass ? "pass" : "fail"}});
    }
    out << arr.dump(2) << '\n';
  } else {
    out << "lemma,params,estimate,ci95,bound,status\n";
    for (const auto& r : rows) {
      out << r.lemma << ',' << r.params << ',' << fmt(r.estimate) << ','
          << fmt(r.ci95) << ',' << fmt(r.bound) << ','
          << (r.pass ? "pass" : "fail") << '\n';
    }
  }
  for (const auto& r : rows) {
    if (!r.pass) {
      all_pass = false;
      err << "violated " << r.lemma << " (" << r.params << "): estimate "
          << fmt(r.estimate) << " ci95 " << fmt(r.ci95) << " bound "
          << fmt(r.bound) << '\n';
    }
  }
  return all_pass ? kExitOk : kExitStatistical;
}

// ------------------------------------------------------------------ mpc

struct MpcArgs {
  double eps = 0.25;
  std::size_t f = 2;
  std::string delta_sweep;
  double n = 1048576.0;
  std::string alg = "f-approx";
  std::optional<std::size_t> j;
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string gen;
  std::string input;
};

json phase_json(const mpc::PhaseRecord& r) {
  return {{"phase_index", r.phase_index},
          {"case", r.case_tag},
          {"r_j", r.r},
          {"sampled_prob_start", r.sampled_prob_start},
          {"relevant_elements", r.relevant_elements},
          {"max_ball", r.max_ball},
          {"residual_degree_after", r.residual_degree_after},
          {"cumulative_rounds", r.cumulative_rounds}};
}

// Sweep "a:b:step" over exponents x, delta = 2^x.
std::vector<std::size_t> parse_sweep(const std::string& text) {
  std::vector<long long> v;
  std::istringstream in(text);
  std::string field;
  while (std::getline(in, field, ':')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoll(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      v.clear();
      break;
    }
  }
  if (v.size() != 3 || v[0] < 0 || v[1] < v[0] || v[2] <= 0 || v[1] > 62) {
    throw Error(ErrorCode::kInvalidArgument,
                "--delta-sweep expects a:b:step with 0 <= a <= b <= 62, "
                "step > 0; got '" + text + "'");
  }
  std::vector<std::size_t> deltas;
  for (long long x = v[0]; x <= v[1]; x += v[2]) {
    deltas.push_back(std::size_t{1} << x);
  }
  return deltas;
}

int cmd_mpc(const MpcArgs& a, std::ostream& out) {
  validate_epsilon(a.eps);
  const bool json_out = a.format == "json";
  if (!a.delta_sweep.empty()) {
    json groups = json::array();
    if (!json_out) {
      out << "phase_index,case,r_j,sampled_prob_start,relevant_elements,"
             "max_ball,residual_degree_after,cumulative_rounds\n";
    }
    for (std::size_t delta : parse_sweep(a.delta_sweep)) {
      const auto plan = mpc::plan_phases(delta, a.f, a.eps, a.n);
      if (json_out) {
        const Schedule schedule(plan.eps, plan.k);
        json phases = json::array();
        std::size_t rounds = 0;
        for (std::size_t x = 0; x < plan.phases.size(); ++x) {
          const auto& ph = plan.phases[x];
          rounds += mpc::rounds_for_phase(ph.length);
          phases.push_back({{"phase_index", x},
                            {"case", ph.case_tag},
                            {"r_j", ph.length},
                            {"sampled_prob_start", schedule[ph.start_step]},
                            {"relevant_elements", nullptr},
                            {"max_ball", nullptr},
                            {"residual_degree_after", nullptr},
                            {"cumulative_rounds", rounds}});
        }
        groups.push_back({{"delta", delta},
                          {"k", plan.k},
                          {"predicted_mpc_rounds", plan.predicted_mpc_rounds},
                          {"phases", phases}});
      } else {
        out << "# delta=" << delta << '\n';
        mpc::write_plan_csv_rows(plan, out);
      }
    }
    if (json_out) out << groups.dump(2) << '\n';
    return kExitOk;
  }

  const Input input = load_input(a.input, a.gen, a.seed);
  if (!input.instance) {
    throw Error(ErrorCode::kInvalidArgument, "mpc needs a set-cover input");
  }
  Rng rng = make_stream(a.seed, 0);
  if (a.alg == "hdelta-inner") {
    if (!a.j) throw Error(ErrorCode::kInvalidArgument, "--j is required");
    const auto trace =
        mpc::simulate_degree_estimation(*input.instance, a.eps, *a.j, rng);
    if (json_out) {
      json batches = json::array();
      for (const auto& b : trace.batches) {
        for (const auto& c : b.chosen) {
          batches.push_back({{"step", b.step},
                             {"set", c.set},
                             {"true_residual", c.true_residual},
                             {"estimate", c.estimate},
                             {"threshold", trace.threshold}});
        }
      }
      out << json{{"round", trace.round},
                  {"q", trace.q},
                  {"k", trace.k},
                  {"batches", batches}}
                 .dump(2)
          << '\n';
    } else {
      out << "step,set,true_residual,estimate,threshold\n";
      for (const auto& b : trace.batches) {
        for (const auto& c : b.chosen) {
          out << b.step << ',' << c.set << ',' << c.true_residual << ','
              << fmt(c.estimate) << ',' << fmt(trace.threshold) << '\n';
        }
      }
    }
    return kExitOk;
  }
  if (a.alg != "f-approx") {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown mpc algorithm '" + a.alg + "'");
  }
  const mpc::MpcRun run = mpc::simulate_mpc_f_approx(*input.instance, a.eps,
                                                     rng);
  if (json_out) {
    json phases = json::array();
    for (const auto& r : run.report.phases) phases.push_back(phase_json(r));
    if (phases.empty()) {
      mpc::PhaseRecord zero;
      phases.push_back(phase_json(zero));
    }
    out << json{{"simulated_rounds", run.report.simulated_rounds},
                {"cover_size", run.solve.cover.size()},
                {"phases", phases}}
               .dump(2)
        << '\n';
  } else {
    mpc::write_phase_csv_header(out);
    mpc::write_phase_csv_rows(run.report, out);
  }
  return kExitOk;
}

// ------------------------------------------------------------- generate

struct GenerateArgs {
  std::size_t sets = 20;
  std::size_t elements = 60;
  std::size_t degree = 3;
  bool hypergraph = false;
  std::size_t vertices = 30;
  std::size_t edges = 60;
  std::size_t edge_size = 3;
  std::uint64_t seed = 1;
  std::string output;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!a.output.empty()) {
    file.open(a.output);
    if (!file) throw std::runtime_error("cannot write '" + a.output + "'");
    sink = &file;
  }
  if (a.hypergraph) {
    serialize_hypergraph(
        generate_random_hypergraph(a.vertices, a.edges, a.edge_size, a.seed),
        *sink);
  } else {
    serialize_instance(
        generate_random_instance(a.sets, a.elements, a.degree, a.seed), *sink);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Sampling-based set cover and hypergraph matching toolkit"};
  app.name("cover_sampler");
  app.require_subcommand(1);
  const std::vector<std::string> formats = {"csv", "json"};

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve one instance and verify it");
  s->add_option("--alg", solve.alg, "Solver")
      ->check(CLI::IsMember(
          {"f-online", "f-bucketed", "hdelta", "match", "mpc-sim"}))
      ->capture_default_str();
  s->add_option("--eps", solve.eps, "Accuracy parameter in (0, 1/2]")
      ->capture_default_str();
  s->add_option("--seed", solve.seed, "Master seed")->capture_default_str();
  s->add_flag("--calibrated", solve.calibrated,
              "Run the schedule at eps/4 so the guarantee is stated in eps");
  s->add_option("--size-oracle-delta", solve.size_oracle_delta,
                "Noise of the size oracle used by hdelta")
      ->capture_default_str();
  s->add_option("--copies", solve.copies,
                "Independent runs; the best valid one is reported")
      ->capture_default_str();
  s->add_option("--target-eps", solve.target_eps,
                "Matching only: run with target-eps / rank");
  s->add_option("--format", solve.format)
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  s->add_option("--gen", solve.gen, "Generate S,E,F instead of reading");
  s->add_option("input", solve.input, "Instance file (p sc or p hg)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify-lemmas",
                               "Monte Carlo and analytic lemma checks");
  v->add_option("--lemma", verify.lemma,
                "3.1, 3.3, steps, 6.1, ratio or all")
      ->capture_default_str();
  v->add_option("--eps", verify.eps, "Restrict the grid to one eps");
  v->add_option("--n", verify.n, "Restrict the grid to one initial size");
  v->add_option("--trials", verify.trials, "Trials per cell (>= 1000)")
      ->capture_default_str();
  v->add_option("--adversary", verify.adversary,
                "identity, halve, delete-neighbors[:rate], "
                "adaptive-kill[:fraction] or all; a single eps/n cell "
                "defaults to identity");
  v->add_option("--seed", verify.seed)->capture_default_str();
  v->add_option("--format", verify.format)
      ->check(CLI::IsMember(formats))
      ->capture_default_str();

  MpcArgs mpc_args;
  auto* m = app.add_subcommand("mpc", "Phase planning and MPC simulation");
  m->add_option("--eps", mpc_args.eps)->capture_default_str();
  m->add_option("--f", mpc_args.f, "Frequency used by the planner")
      ->capture_default_str();
  m->add_option("--delta-sweep", mpc_args.delta_sweep,
                "Planner sweep over delta = 2^x for x in a:b:step");
  m->add_option("--n", mpc_args.n, "Vertex count used by the planner")
      ->capture_default_str();
  m->add_option("--alg", mpc_args.alg)
      ->check(CLI::IsMember({"f-approx", "hdelta-inner"}))
      ->capture_default_str();
  m->add_option("--j", mpc_args.j, "Size-threshold round for hdelta-inner");
  m->add_option("--seed", mpc_args.seed)->capture_default_str();
  m->add_option("--format", mpc_args.format)
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  m->add_option("--gen", mpc_args.gen, "Generate S,E,F instead of reading");
  m->add_option("input", mpc_args.input, "Set-cover instance file");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a random instance");
  g->add_option("--sets", gen.sets)->capture_default_str();
  g->add_option("--elements", gen.elements)->capture_default_str();
  g->add_option("--degree", gen.degree, "Sets per element")
      ->capture_default_str();
  g->add_flag("--hypergraph", gen.hypergraph,
              "Write a hypergraph (--vertices, --edges, --edge-size)");
  g->add_option("--vertices", gen.vertices)->capture_default_str();
  g->add_option("--edges", gen.edges)->capture_default_str();
  g->add_option("--edge-size", gen.edge_size)->capture_default_str();
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("-o,--output", gen.output, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  try {
    if (s->parsed()) return cmd_solve(solve, out, err);
    if (v->parsed()) return cmd_verify(verify, out, err);
    if (m->parsed()) return cmd_mpc(mpc_args, out);
    if (g->parsed()) return cmd_generate(gen, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace cover_sampler::cli
