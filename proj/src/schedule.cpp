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

#include "cover_sampler/schedule.hpp"

#include <cmath>
#include <string>

#include "cover_sampler/error.hpp"

namespace cover_sampler {

namespace {
constexpr double kIntegerGuard = 1e-9;
}  // namespace

void validate_epsilon(double eps) {
  if (!(eps > 0.0 && eps <= 0.5)) {
    throw Error(ErrorCode::kInvalidEpsilon,
                "eps must lie in (0, 1/2], got " + std::to_string(eps));
  }
}

long long ceil_guarded(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) < kIntegerGuard) return static_cast<long long>(r);
  return static_cast<long long>(std::ceil(x));
}

long long floor_guarded(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) < kIntegerGuard) return static_cast<long long>(r);
  return static_cast<long long>(std::floor(x));
}

double log_one_plus(double x, double eps) {
  return std::log(x) / std::log1p(eps);
}

int compute_b(double eps) {
  validate_epsilon(eps);
  return static_cast<int>(ceil_guarded(std::log(2.0 + 2.0 * eps) / eps));
}

std::size_t schedule_length_outer(std::size_t delta, double eps) {
  const int b = compute_b(eps);
  if (delta == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "schedule length needs delta >= 1; empty inputs short-circuit");
  }
  const double blocks =
      log_one_plus(static_cast<double>(delta) / eps, eps);
  return static_cast<std::size_t>(b) *
         static_cast<std::size_t>(ceil_guarded(blocks));
}

std::size_t schedule_length_inner(std::size_t freq, double eps) {
  return schedule_length_outer(freq, eps);
}

Schedule::Schedule(double eps, std::size_t k)
    : eps_(eps), b_(compute_b(eps)), k_(k), p_(k + 1) {
  const auto b = static_cast<std::size_t>(b_);
  for (std::size_t i = 0; i <= k; ++i) {
    const auto exponent = static_cast<double>((i + b - 1) / b);
    p_[i] = std::pow(1.0 + eps, -exponent);
  }
}

double Schedule::probability(std::size_t i) const {
  if (i > k_) {
    throw Error(ErrorCode::kOutOfRange, "step " + std::to_string(i) +
                                            " outside [0, " +
                                            std::to_string(k_) + "]");
  }
  return p_[i];
}

std::vector<double> Schedule::bucket_distribution() const {
  std::vector<double> dist(k_ + 1);
  double untouched = 1.0;  // prod_{j > i} (1 - p_j)
  for (std::size_t i = k_ + 1; i-- > 0;) {
    dist[i] = p_[i] * untouched;
    untouched *= 1.0 - p_[i];
  }
  return dist;
}

AliasTable::AliasTable(std::span<const double> weights) {
  const std::size_t n = weights.size();
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "alias weights must be finite and nonnegative");
    }
    total += w;
  }
  if (n == 0 || !(total > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alias weights sum to zero");
  }

  threshold_.assign(n, 1.0);
  alias_.resize(n);
  std::vector<double> scaled(n);
  // Two FIFO worklists filled in index order, so the lowest index is always
  // paired first and the table is a pure function of the weights.
  std::vector<std::uint32_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    alias_[i] = static_cast<std::uint32_t>(i);
    scaled[i] = weights[i] * static_cast<double>(n) / total;
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  std::size_t s_head = 0, l_head = 0;
  while (s_head < small.size() && l_head < large.size()) {
    const std::uint32_t lo = small[s_head++];
    const std::uint32_t hi = large[l_head];
    threshold_[lo] = scaled[lo];
    alias_[lo] = hi;
    scaled[hi] -= 1.0 - scaled[lo];
    if (scaled[hi] < 1.0) {
      ++l_head;
      small.push_back(hi);
    }
  }
  // Leftovers on either list are full slots up to rounding error.
  for (; s_head < small.size(); ++s_head) threshold_[small[s_head]] = 1.0;
  for (; l_head < large.size(); ++l_head) threshold_[large[l_head]] = 1.0;
}

std::size_t AliasTable::sample(Rng& rng) const {
  const std::size_t slot = uniform_index(rng, threshold_.size());
  return uniform01(rng) < threshold_[slot] ? slot : alias_[slot];
}

double AliasTable::probability(std::size_t i) const {
  const double n = static_cast<double>(threshold_.size());
  double mass = threshold_[i];
  for (std::size_t slot = 0; slot < threshold_.size(); ++slot) {
    if (alias_[slot] == i && slot != i) mass += 1.0 - threshold_[slot];
  }
  return mass / n;
}

}  // namespace cover_sampler
