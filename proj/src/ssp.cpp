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

#include "cover_sampler/ssp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>

#include "cover_sampler/error.hpp"
#include "cover_sampler/parallel.hpp"

namespace cover_sampler::ssp {

namespace {

std::string format_param(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

// Keeps the first `keep` positions, pulling the protected member into the
// kept range if it sits beyond it.
void truncate_keeping(std::vector<MemberId>& members, std::size_t keep,
                      std::optional<MemberId> protected_member) {
  if (keep >= members.size()) return;
  if (protected_member && keep > 0) {
    auto it = std::find(members.begin() + static_cast<std::ptrdiff_t>(keep),
                        members.end(), *protected_member);
    if (it != members.end()) std::iter_swap(members.begin() + (keep - 1), it);
  }
  members.resize(keep);
}

// Counts members kept by independent Bernoulli(p) draws and reports whether
// `marked` was among them.
std::size_t sample_members(const std::vector<MemberId>& members, double p,
                           MemberId marked, Rng& rng, bool& marked_hit) {
  marked_hit = false;
  if (p >= 1.0) {
    marked_hit =
        std::find(members.begin(), members.end(), marked) != members.end();
    return members.size();
  }
  const double log1m_p = std::log1p(-p);
  std::size_t count = 0;
  for (std::size_t pos = geometric_skip(rng, log1m_p); pos < members.size();
       pos += 1 + geometric_skip(rng, log1m_p)) {
    ++count;
    if (members[pos] == marked) marked_hit = true;
  }
  return count;
}

}  // namespace

void HalveEachStepAdversary::shrink(const AdversaryContext& ctx,
                                    std::vector<MemberId>& members) {
  truncate_keeping(members, (members.size() + 1) / 2, ctx.protected_member);
}

DeleteSampledNeighborsAdversary::DeleteSampledNeighborsAdversary(double rate)
    : rate_(rate) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw Error(ErrorCode::kInvalidArgument,
                "deletion rate must be a finite nonnegative number");
  }
}

std::string DeleteSampledNeighborsAdversary::name() const {
  return "delete-neighbors:" + format_param(rate_);
}

double DeleteSampledNeighborsAdversary::deletion_probability(
    const Schedule& schedule, std::size_t step) const {
  return std::min(1.0, rate_ * schedule[step]);
}

void DeleteSampledNeighborsAdversary::shrink(const AdversaryContext& ctx,
                                             std::vector<MemberId>& members) {
  const double q = deletion_probability(ctx.schedule, ctx.step);
  if (q <= 0.0) return;
  std::vector<std::size_t> doomed;
  if (q >= 1.0) {
    doomed.resize(members.size());
    std::iota(doomed.begin(), doomed.end(), std::size_t{0});
  } else {
    const double log1m_q = std::log1p(-q);
    for (std::size_t pos = geometric_skip(ctx.rng, log1m_q);
         pos < members.size(); pos += 1 + geometric_skip(ctx.rng, log1m_q)) {
      doomed.push_back(pos);
    }
  }
  // Descending swap-removal: every position above the current one has
  // already been handled, so the element swapped in is a survivor.
  for (auto it = doomed.rbegin(); it != doomed.rend(); ++it) {
    if (ctx.protected_member && members[*it] == *ctx.protected_member) {
      continue;
    }
    members[*it] = members.back();
    members.pop_back();
  }
}

AdaptiveKillOnNearMissAdversary::AdaptiveKillOnNearMissAdversary(
    double near_miss_fraction)
    : fraction_(near_miss_fraction) {
  if (!(near_miss_fraction > 0.0) || !std::isfinite(near_miss_fraction)) {
    throw Error(ErrorCode::kInvalidArgument,
                "near-miss fraction must be positive");
  }
}

std::string AdaptiveKillOnNearMissAdversary::name() const {
  return "adaptive-kill:" + format_param(fraction_);
}

void AdaptiveKillOnNearMissAdversary::shrink(const AdversaryContext& ctx,
                                             std::vector<MemberId>& members) {
  const double expected_previous =
      ctx.schedule[ctx.step + 1] * static_cast<double>(ctx.previous_size);
  const bool near_miss = ctx.previous_sampled == 0 &&
                         expected_previous >= fraction_ * ctx.schedule.eps();
  if (near_miss) {
    truncate_keeping(members, (members.size() + 3) / 4, ctx.protected_member);
  }
}

std::string AdversarySpec::name() const {
  switch (kind) {
    case AdversaryKind::kIdentity:
      return "identity";
    case AdversaryKind::kHalveEachStep:
      return "halve";
    case AdversaryKind::kDeleteSampledNeighbors:
      return "delete-neighbors:" + format_param(param);
    case AdversaryKind::kAdaptiveKillOnNearMiss:
      return "adaptive-kill:" + format_param(param);
  }
  return "unknown";
}

std::unique_ptr<Adversary> make_adversary(const AdversarySpec& spec) {
  switch (spec.kind) {
    case AdversaryKind::kIdentity:
      return std::make_unique<IdentityAdversary>();
    case AdversaryKind::kHalveEachStep:
      return std::make_unique<HalveEachStepAdversary>();
    case AdversaryKind::kDeleteSampledNeighbors:
      return std::make_unique<DeleteSampledNeighborsAdversary>(spec.param);
    case AdversaryKind::kAdaptiveKillOnNearMiss:
      return std::make_unique<AdaptiveKillOnNearMissAdversary>(spec.param);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown adversary kind");
}

AdversarySpec parse_adversary(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  double param = 0.5;
  if (colon != std::string_view::npos) {
    const std::string tail(text.substr(colon + 1));
    std::size_t used = 0;
    try {
      param = std::stod(tail, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tail.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bad adversary parameter '" + tail + "'");
    }
  }
  AdversarySpec spec;
  if (head == "identity") {
    spec.kind = AdversaryKind::kIdentity;
  } else if (head == "halve") {
    spec.kind = AdversaryKind::kHalveEachStep;
  } else if (head == "delete-neighbors") {
    spec.kind = AdversaryKind::kDeleteSampledNeighbors;
    spec.param = param;
  } else if (head == "adaptive-kill") {
    spec.kind = AdversaryKind::kAdaptiveKillOnNearMiss;
    spec.param = param;
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown adversary '" + std::string(text) + "'");
  }
  if (colon != std::string_view::npos &&
      (spec.kind == AdversaryKind::kIdentity ||
       spec.kind == AdversaryKind::kHalveEachStep)) {
    throw Error(ErrorCode::kInvalidArgument,
                "adversary '" + std::string(head) + "' takes no parameter");
  }
  make_adversary(spec);  // validates the parameter
  return spec;
}

std::vector<AdversarySpec> builtin_adversaries() {
  return {
      {AdversaryKind::kIdentity, 0.0},
      {AdversaryKind::kHalveEachStep, 0.0},
      {AdversaryKind::kDeleteSampledNeighbors, 0.5},
      {AdversaryKind::kAdaptiveKillOnNearMiss, 0.5},
  };
}

std::size_t min_steps(std::size_t initial_size, double eps) {
  return schedule_length_outer(initial_size, eps);
}

SspConfig SspConfig::with_min_steps(std::size_t initial_size, double eps,
                                    AdversarySpec adversary,
                                    std::uint64_t seed) {
  SspConfig config;
  config.initial_size = initial_size;
  config.eps = eps;
  config.k = min_steps(initial_size, eps);
  config.adversary = adversary;
  config.seed = seed;
  return config;
}

void validate(const SspConfig& config) {
  validate_epsilon(config.eps);
  if (config.initial_size == 0) {
    throw Error(ErrorCode::kInvalidConfig, "initial set must be nonempty");
  }
  if (config.initial_size > std::numeric_limits<MemberId>::max()) {
    throw Error(ErrorCode::kInvalidConfig, "initial set too large");
  }
  if (config.marked >= config.initial_size) {
    throw Error(ErrorCode::kInvalidConfig, "marked member outside the set");
  }
  const std::size_t needed = min_steps(config.initial_size, config.eps);
  if (config.k < needed) {
    throw Error(ErrorCode::kInvalidConfig,
                "k = " + std::to_string(config.k) + " is below the minimum " +
                    std::to_string(needed) + " for n = " +
                    std::to_string(config.initial_size));
  }
}

SspTrace run_ssp(const SspConfig& config) {
  validate(config);
  auto adversary = make_adversary(config.adversary);
  Rng rng(config.seed);
  return run_ssp(config, *adversary, rng);
}

SspTrace run_ssp(const SspConfig& config, Adversary& adversary, Rng& rng) {
  validate(config);
  const Schedule schedule(config.eps, config.k);
  const std::optional<MemberId> protected_member =
      config.protect_marked ? std::optional<MemberId>(config.marked)
                            : std::nullopt;
  adversary.reset();
  std::vector<MemberId> members(config.initial_size);
  std::iota(members.begin(), members.end(), MemberId{0});

  SspTrace trace;
  trace.steps.reserve(config.k + 1);
  std::size_t previous_size = members.size();
  for (std::size_t step = config.k + 1; step-- > 0;) {
    if (step < config.k) {
      const AdversaryContext ctx{step, schedule, previous_size, 0,
                                 protected_member, rng};
      const std::size_t before = members.size();
      adversary.shrink(ctx, members);
      if (members.size() > before) {
        throw Error(ErrorCode::kInvalidArgument,
                    "adversary " + adversary.name() + " grew the set");
      }
    }
    bool marked_hit = false;
    const std::size_t sampled =
        sample_members(members, schedule[step], config.marked, rng, marked_hit);
    trace.steps.push_back({step, members.size(), sampled});
    if (sampled > 0) {
      trace.z = static_cast<long long>(step);
      trace.r_z = sampled;
      trace.contains_marked = marked_hit;
      break;
    }
    previous_size = members.size();
  }
  return trace;
}

namespace {

// Per-step hazards of the memoryless regime, as suffix sums so that the
// total hazard of steps t..s is S[t] - S[s+1]. Step hazards are capped so
// that p_0 = 1 stays finite; exp(-cap) underflows to zero anyway.
struct JumpTables {
  std::vector<double> deletion;    // q_i (0 at step k)
  std::vector<double> sample_sum;  // suffix sums of -log(1 - p_i)
  std::vector<double> either_sum;  // suffix sums of -log((1-q_i)(1-p_i))
};

constexpr double kHazardCap = 1e4;

JumpTables build_jump_tables(const Schedule& schedule,
                             const Adversary& adversary) {
  const std::size_t k = schedule.k();
  JumpTables t;
  t.deletion.assign(k + 1, 0.0);
  t.sample_sum.assign(k + 2, 0.0);
  t.either_sum.assign(k + 2, 0.0);
  for (std::size_t i = k + 1; i-- > 0;) {
    const double q = i < k ? adversary.deletion_probability(schedule, i) : 0.0;
    t.deletion[i] = q;
    const double hs = std::min(kHazardCap, -std::log1p(-schedule[i]));
    const double hq = std::min(kHazardCap, -std::log1p(-q));
    t.sample_sum[i] = t.sample_sum[i + 1] + hs;
    t.either_sum[i] = t.either_sum[i + 1] + std::min(kHazardCap, hs + hq);
  }
  return t;
}

struct TrialOutcome {
  std::size_t r_z = 0;
  bool marked_hit = false;
};

// One trial, restricted to what the estimators need. Executes steps one at a
// time while the adversary is not memoryless, then jumps from event to
// event. In the memoryless regime unprotected members are exchangeable, so
// they are tracked as a count, with the marked member (when unprotected)
// pinned to position 0 of the pool.
class TrialRunner {
 public:
  TrialRunner(const SspConfig& config, const Schedule& schedule,
              const JumpTables& tables, Adversary& adversary)
      : config_(config),
        schedule_(schedule),
        tables_(tables),
        adversary_(adversary) {}

  TrialOutcome run(Rng& rng) {
    adversary_.reset();
    const std::size_t n = config_.initial_size;
    const bool protect = config_.protect_marked;
    if (adversary_.memoryless(n)) {
      return jump(config_.k, n - (protect ? 1 : 0), protect, !protect, rng);
    }
    const std::optional<MemberId> protected_member =
        protect ? std::optional<MemberId>(config_.marked) : std::nullopt;
    members_.resize(n);
    std::iota(members_.begin(), members_.end(), MemberId{0});
    std::size_t previous_size = n;
    for (std::size_t step = config_.k + 1; step-- > 0;) {
      if (step < config_.k) {
        const AdversaryContext ctx{step, schedule_, previous_size, 0,
                                   protected_member, rng};
        adversary_.shrink(ctx, members_);
      }
      TrialOutcome out;
      out.r_z = sample_members(members_, schedule_[step], config_.marked, rng,
                               out.marked_hit);
      if (out.r_z > 0) return out;
      previous_size = members_.size();
      if (step > 0 && adversary_.memoryless(members_.size())) {
        const bool marked_present =
            std::find(members_.begin(), members_.end(), config_.marked) !=
            members_.end();
        const bool prot = protect && marked_present;
        return jump(step - 1, members_.size() - (prot ? 1 : 0), prot,
                    !protect && marked_present, rng);
      }
    }
    return {};
  }

 private:
  // Hazard accumulated over steps t..s by the current population.
  double hazard(std::size_t t, std::size_t s, std::size_t pool,
                bool prot) const {
    double h = 0.0;
    if (pool > 0) {
      h += static_cast<double>(pool) *
           (tables_.either_sum[t] - tables_.either_sum[s + 1]);
    }
    if (prot) h += tables_.sample_sum[t] - tables_.sample_sum[s + 1];
    return h;
  }

  TrialOutcome jump(std::size_t s, std::size_t pool, bool prot,
                    bool marked_in_pool, Rng& rng) {
    while (pool > 0 || prot) {
      const double target = -std::log(uniform_open_closed(rng));
      if (hazard(0, s, pool, prot) < target) return {};
      // Largest t <= s whose cumulative hazard reaches the target.
      std::size_t lo = 0, hi = s + 1;
      while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (hazard(mid, s, pool, prot) >= target) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      const std::size_t t = lo;
      const double p = schedule_[t];
      const double q = tables_.deletion[t];
      const double e = q + (1.0 - q) * p;
      const double log1m_e = std::log1p(-e);
      const double none_pool =
          pool > 0 ? std::exp(static_cast<double>(pool) * log1m_e) : 1.0;

      // Resolve step t conditioned on at least one event in it.
      TrialOutcome out;
      bool prot_event = false;
      if (prot) {
        prot_event = uniform01(rng) < p / (1.0 - (1.0 - p) * none_pool);
        if (prot_event) {
          out.r_z = 1;
          out.marked_hit = true;
        }
      }
      std::size_t deleted = 0;
      bool marked_deleted = false;
      if (pool > 0) {
        std::size_t pos;
        if (prot_event) {
          pos = geometric_skip(rng, log1m_e);
        } else {
          const double u = uniform01(rng);
          const double first =
              std::floor(std::log1p(-u * (1.0 - none_pool)) / log1m_e);
          pos = std::min(pool - 1, static_cast<std::size_t>(
                                       std::max(0.0, first)));
        }
        const double keep_as_sample = q > 0.0 ? (1.0 - q) * p / e : 1.0;
        for (; pos < pool; pos += 1 + geometric_skip(rng, log1m_e)) {
          const bool sampled = q <= 0.0 || uniform01(rng) < keep_as_sample;
          if (sampled) {
            ++out.r_z;
            if (pos == 0 && marked_in_pool) out.marked_hit = true;
          } else {
            ++deleted;
            if (pos == 0 && marked_in_pool) marked_deleted = true;
          }
        }
      }
      if (out.r_z > 0) return out;
      pool -= deleted;
      if (marked_deleted) marked_in_pool = false;
      if (t == 0) return {};
      s = t - 1;
    }
    return {};
  }

  const SspConfig& config_;
  const Schedule& schedule_;
  const JumpTables& tables_;
  Adversary& adversary_;
  std::vector<MemberId> members_;
};

struct TrialTotals {
  std::uint64_t trials = 0;
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
  std::uint64_t accepted = 0;
  std::uint64_t multiple = 0;
};

// Runs trials 0..count-1, trial t on stream (seed, t). Totals are integer
// sums, so the result does not depend on how trials are split across
// workers.
TrialTotals run_trials(const SspConfig& config, std::size_t count) {
  const Schedule schedule(config.eps, config.k);
  const auto probe = make_adversary(config.adversary);
  const JumpTables tables = build_jump_tables(schedule, *probe);
  std::vector<TrialTotals> per_worker(worker_count());
  parallel_ranges(count, [&](std::size_t worker, std::size_t begin,
                             std::size_t end) {
    auto adversary = make_adversary(config.adversary);
    TrialRunner runner(config, schedule, tables, *adversary);
    TrialTotals local;
    for (std::size_t t = begin; t < end; ++t) {
      Rng rng = make_stream(config.seed, t);
      const TrialOutcome out = runner.run(rng);
      local.trials += 1;
      local.sum += out.r_z;
      local.sum_sq += static_cast<std::uint64_t>(out.r_z) * out.r_z;
      if (out.marked_hit) {
        local.accepted += 1;
        if (out.r_z > 1) local.multiple += 1;
      }
    }
    per_worker[worker] = local;
  });
  TrialTotals total;
  for (const auto& w : per_worker) {
    total.trials += w.trials;
    total.sum += w.sum;
    total.sum_sq += w.sum_sq;
    total.accepted += w.accepted;
    total.multiple += w.multiple;
  }
  return total;
}

void require_trials(std::size_t trials) {
  if (trials < kMinTrials) {
    throw Error(ErrorCode::kInsufficientTrials,
                "need at least " + std::to_string(kMinTrials) +
                    " trials, got " + std::to_string(trials));
  }
}

}  // namespace

Estimate estimate_expected_rz(const SspConfig& config, std::size_t trials) {
  validate(config);
  require_trials(trials);
  const TrialTotals totals = run_trials(config, trials);
  const auto n = static_cast<long double>(totals.trials);
  const long double mean = static_cast<long double>(totals.sum) / n;
  const long double var =
      (static_cast<long double>(totals.sum_sq) - n * mean * mean) / (n - 1);
  Estimate est;
  est.mean = static_cast<double>(mean);
  est.ci95 = kZ95 * std::sqrt(static_cast<double>(std::max(0.0L, var) / n));
  est.trials = totals.trials;
  return est;
}

ProportionEstimate estimate_conditional_multiplicity(const SspConfig& config,
                                                     std::size_t trials) {
  SspConfig conditioned = config;
  conditioned.protect_marked = true;
  validate(conditioned);
  require_trials(trials);
  const TrialTotals totals = run_trials(conditioned, trials);
  if (totals.accepted == 0) {
    throw Error(ErrorCode::kInsufficientSamples,
                "the marked member was never sampled in " +
                    std::to_string(trials) + " trials");
  }
  return proportion(totals.multiple, totals.accepted, totals.trials);
}

std::string_view to_string(LemmaViolation::Check check) {
  switch (check) {
    case LemmaViolation::Check::kLowInitial:
      return "low-initial";
    case LemmaViolation::Check::kSlowIncrease:
      return "slow-increase";
    case LemmaViolation::Check::kConditionalSize:
      return "conditional-size";
  }
  return "unknown";
}

StepLemmaReport check_step_lemmas(const Schedule& schedule,
                                  std::span<const std::size_t> sizes) {
  const std::size_t k = schedule.k();
  if (sizes.size() != k + 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "size sequence has length " + std::to_string(sizes.size()) +
                    ", expected k + 1 = " + std::to_string(k + 1));
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (sizes[i] > sizes[i + 1]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sizes must not grow as the step index decreases (step " +
                      std::to_string(i) + ")");
    }
  }
  constexpr double kSlack = 1e-12;
  const double eps = schedule.eps();
  const auto b = static_cast<std::size_t>(schedule.b());
  auto load = [&](std::size_t i) {
    return schedule[i] * static_cast<double>(sizes[i]);
  };

  StepLemmaReport report;
  using Check = LemmaViolation::Check;
  for (std::size_t j = k + 1; j-- > 0 && j + b > k;) {
    ++report.checked;
    if (load(j) > eps + kSlack) {
      report.violations.push_back({Check::kLowInitial, j, load(j), eps});
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j <= std::min(k, i + b); ++j) {
      ++report.checked;
      const double rhs = (1.0 + eps) * load(j);
      if (load(i) > rhs * (1.0 + kSlack)) {
        report.violations.push_back({Check::kSlowIncrease, i, load(i), rhs});
      }
    }
  }
  for (std::size_t i = 0; i <= k; ++i) {
    if (sizes[i] == 0) continue;
    ++report.checked;
    const double p = schedule[i];
    const double n = static_cast<double>(sizes[i]);
    const double nonempty = -std::expm1(n * std::log1p(-p));
    const double lhs = p * n / nonempty;
    const double rhs = 1.0 + p * n;
    if (lhs > rhs * (1.0 + kSlack)) {
      report.violations.push_back({Check::kConditionalSize, i, lhs, rhs});
    }
  }
  return report;
}

}  // namespace cover_sampler::ssp
