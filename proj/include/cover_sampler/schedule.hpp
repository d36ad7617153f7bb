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

#ifndef COVER_SAMPLER_SCHEDULE_HPP_
#define COVER_SAMPLER_SCHEDULE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cover_sampler/rng.hpp"

namespace cover_sampler {

// Accepts eps in (0, 1/2]; anything else throws ErrorCode::kInvalidEpsilon.
void validate_epsilon(double eps);

// Rounding helpers shared by every threshold computation: a value within
// 1e-9 of an integer is snapped to that integer before ceil/floor, so step
// counts do not depend on the last bit of a logarithm.
long long ceil_guarded(double x);
long long floor_guarded(double x);

// log_{1+eps}(x) as ln(x) / ln(1+eps).
double log_one_plus(double x, double eps);

// b = ceil(ln(2 + 2 eps) / eps).
int compute_b(double eps);

// k = b * ceil(log_{1+eps}(delta / eps)); guarantees p_k <= eps / delta.
std::size_t schedule_length_outer(std::size_t delta, double eps);

// Same arithmetic with the maximum element frequency f in place of delta.
std::size_t schedule_length_inner(std::size_t freq, double eps);

// Probability schedule p_i = (1+eps)^(-ceil(i/b)) over steps i = 0..k.
// Steps are executed from k down to 0; p_0 = 1 forces the final step.
class Schedule {
 public:
  Schedule(double eps, std::size_t k);

  static Schedule outer(std::size_t delta, double eps) {
    return Schedule(eps, schedule_length_outer(delta, eps));
  }
  static Schedule inner(std::size_t freq, double eps) {
    return Schedule(eps, schedule_length_inner(freq, eps));
  }

  double eps() const { return eps_; }
  int b() const { return b_; }
  std::size_t k() const { return k_; }

  // Throws kOutOfRange for i > k.
  double probability(std::size_t i) const;
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> probabilities() const { return p_; }

  // Probability that an element is first sampled at step i, for i = 0..k:
  // p_i * prod_{j=i+1..k} (1 - p_j). Sums to 1 because p_0 = 1.
  std::vector<double> bucket_distribution() const;

 private:
  double eps_;
  int b_;
  std::size_t k_;
  std::vector<double> p_;
};

// Walker/Vose alias table: O(n) construction, O(1) sampling.
class AliasTable {
 public:
  // Weights must be nonnegative with a positive sum; they are normalized.
  explicit AliasTable(std::span<const double> weights);

  std::size_t size() const { return threshold_.size(); }
  std::size_t sample(Rng& rng) const;

  // Probability mass the table assigns to index i (reconstructed from the
  // slots, so it also checks the construction).
  double probability(std::size_t i) const;

 private:
  std::vector<double> threshold_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace cover_sampler

#endif  // COVER_SAMPLER_SCHEDULE_HPP_
