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

#ifndef COVER_SAMPLER_SSP_HPP_
#define COVER_SAMPLER_SSP_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cover_sampler/rng.hpp"
#include "cover_sampler/schedule.hpp"
#include "cover_sampler/stats.hpp"

// Set sampling process: a set A shrinks under an adversary while, at each
// step i = k..0, the survivors are sampled independently with probability
// p_i. The process stops at the first step z whose sample R_z is nonempty.
namespace cover_sampler::ssp {

using MemberId = std::uint32_t;

// What an adversary may look at when building A_i from A_{i+1}. Every sample
// R_j with j > i is empty (the process stops at the first nonempty one), so
// the history reduces to the previous step's size and sample count.
struct AdversaryContext {
  std::size_t step;
  const Schedule& schedule;
  std::size_t previous_size;
  std::size_t previous_sampled;
  std::optional<MemberId> protected_member;
  Rng& rng;
};

class Adversary {
 public:
  virtual ~Adversary() = default;

  virtual std::string name() const = 0;
  // Clears per-run state; called before every run.
  virtual void reset() {}
  // Removes members (never adds, never removes the protected member).
  virtual void shrink(const AdversaryContext& ctx,
                      std::vector<MemberId>& members) = 0;
  // True if, from the current member count on, the adversary behaves as an
  // oblivious independent deleter: at each remaining step i every
  // unprotected member is removed independently with probability
  // deletion_probability(schedule, i). Estimators then jump between steps
  // where something happens instead of executing every step.
  virtual bool memoryless(std::size_t size) const = 0;
  virtual double deletion_probability(const Schedule& /*schedule*/,
                                      std::size_t /*step*/) const {
    return 0.0;
  }
};

// Never deletes.
class IdentityAdversary final : public Adversary {
 public:
  std::string name() const override { return "identity"; }
  void shrink(const AdversaryContext&, std::vector<MemberId>&) override {}
  bool memoryless(std::size_t) const override { return true; }
};

// Keeps ceil(|A|/2) members every step (the lowest positions, plus the
// protected member if it would otherwise be dropped).
class HalveEachStepAdversary final : public Adversary {
 public:
  std::string name() const override { return "halve"; }
  void shrink(const AdversaryContext& ctx,
              std::vector<MemberId>& members) override;
  bool memoryless(std::size_t size) const override { return size <= 1; }
};

// Each member disappears with probability min(1, rate * p_i) at step i: the
// way an element of a set vanishes in the cover algorithms when another set
// containing it is picked.
class DeleteSampledNeighborsAdversary final : public Adversary {
 public:
  explicit DeleteSampledNeighborsAdversary(double rate);
  std::string name() const override;
  void shrink(const AdversaryContext& ctx,
              std::vector<MemberId>& members) override;
  bool memoryless(std::size_t) const override { return true; }
  double deletion_probability(const Schedule& schedule,
                              std::size_t step) const override;

 private:
  double rate_;
};

// Watches the history: after a near miss (previous step had expected sample
// size p * n >= fraction * eps yet sampled nothing) it keeps only
// ceil(|A|/4) members.
class AdaptiveKillOnNearMissAdversary final : public Adversary {
 public:
  explicit AdaptiveKillOnNearMissAdversary(double near_miss_fraction = 0.5);
  std::string name() const override;
  void shrink(const AdversaryContext& ctx,
              std::vector<MemberId>& members) override;
  bool memoryless(std::size_t size) const override { return size <= 1; }

 private:
  double fraction_;
};

enum class AdversaryKind {
  kIdentity,
  kHalveEachStep,
  kDeleteSampledNeighbors,
  kAdaptiveKillOnNearMiss,
};

struct AdversarySpec {
  AdversaryKind kind = AdversaryKind::kIdentity;
  double param = 0.0;  // rate or near-miss fraction; ignored otherwise

  std::string name() const;
};

std::unique_ptr<Adversary> make_adversary(const AdversarySpec& spec);

// Accepts "identity", "halve", "delete-neighbors[:rate]",
// "adaptive-kill[:fraction]".
AdversarySpec parse_adversary(std::string_view text);

// identity, halve, delete-neighbors:0.5, adaptive-kill:0.5.
std::vector<AdversarySpec> builtin_adversaries();

// b * ceil(log_{1+eps}(n / eps)): the fewest steps a run over n members may
// use.
std::size_t min_steps(std::size_t initial_size, double eps);

// A_k is the initial set itself; the adversary first acts when building
// A_{k-1}.
struct SspConfig {
  std::size_t initial_size = 1;
  double eps = 0.1;
  std::size_t k = 0;
  AdversarySpec adversary;
  std::uint64_t seed = 0;
  // Member whose presence in R_z is reported (members are 0..n-1).
  MemberId marked = 0;
  bool protect_marked = false;

  // Config with k = min_steps(initial_size, eps).
  static SspConfig with_min_steps(std::size_t initial_size, double eps,
                                  AdversarySpec adversary,
                                  std::uint64_t seed);
};

// Throws kInvalidConfig unless initial_size >= 1, eps is valid and
// k >= min_steps(initial_size, eps).
void validate(const SspConfig& config);

struct StepRecord {
  std::size_t step;
  std::size_t size;     // |A_i|
  std::size_t sampled;  // |R_i|
};

struct SspTrace {
  std::vector<StepRecord> steps;  // in execution order: k, k-1, ..., z
  long long z = -1;
  std::size_t r_z = 0;
  bool contains_marked = false;
};

// Single run with the full step-by-step record.
SspTrace run_ssp(const SspConfig& config);

// Same process for an explicit adversary instance and RNG.
SspTrace run_ssp(const SspConfig& config, Adversary& adversary, Rng& rng);

// Mean of |R_z| (0 when nothing is ever sampled) over independent trials;
// trial t uses stream (config.seed, t). Requires trials >= 1000.
Estimate estimate_expected_rz(const SspConfig& config, std::size_t trials);

// P(|R_z| > 1 | marked in R_z) by rejection: trials where the marked member
// is not in R_z are discarded. The marked member is protected from the
// adversary. Throws kInsufficientSamples if no trial is accepted.
ProportionEstimate estimate_conditional_multiplicity(const SspConfig& config,
                                                     std::size_t trials);

inline constexpr std::size_t kMinTrials = 1000;

struct LemmaViolation {
  enum class Check { kLowInitial, kSlowIncrease, kConditionalSize };
  Check check;
  std::size_t step;
  double lhs;
  double rhs;
};

struct StepLemmaReport {
  bool ok() const { return violations.empty(); }
  std::size_t checked = 0;
  std::vector<LemmaViolation> violations;
};

std::string_view to_string(LemmaViolation::Check check);

// Deterministic step-level checks for a fixed size sequence sizes[i] = n_i
// (length k+1, non-decreasing in i):
//   low-initial:   p_j n_j <= eps for j in (k-b, k]
//   slow-increase: p_i n_i <= (1+eps) p_j n_j for j in [i+1, i+b]
//   conditional:   p n / (1 - (1-p)^n) <= 1 + p n at every step with n > 0
StepLemmaReport check_step_lemmas(const Schedule& schedule,
                                  std::span<const std::size_t> sizes);

}  // namespace cover_sampler::ssp

#endif  // COVER_SAMPLER_SSP_HPP_
