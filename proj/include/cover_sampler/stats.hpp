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

#ifndef COVER_SAMPLER_STATS_HPP_
#define COVER_SAMPLER_STATS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>

namespace cover_sampler {

// z-quantile used for every two-sided 95% normal-approximation interval.
inline constexpr double kZ95 = 1.959963984540054;

// Streaming mean / variance (Welford), mergeable across workers.
class RunningStats {
 public:
  void add(double x);
  void merge(const RunningStats& other);

  std::size_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const;  // unbiased sample variance; 0 for count < 2
  double stddev() const;
  double standard_error() const;
  double ci95() const { return kZ95 * standard_error(); }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct Estimate {
  double mean = 0.0;
  double ci95 = 0.0;
  std::size_t trials = 0;
};

struct ProportionEstimate {
  double p_hat = 0.0;
  double ci95 = 0.0;
  std::size_t accepted = 0;
  std::size_t trials = 0;
};

ProportionEstimate proportion(std::size_t successes, std::size_t accepted,
                              std::size_t trials);

// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)| for
// integer-valued samples. Inputs need not be sorted.
double ks_distance(std::span<const std::int64_t> a,
                   std::span<const std::int64_t> b);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_norm = 0.0;  // Euclidean norm of y - (slope * x + intercept)
};

// Ordinary least squares y ~ slope * x + intercept.
LinearFit fit_linear(std::span<const double> x, std::span<const double> y);

}  // namespace cover_sampler

#endif  // COVER_SAMPLER_STATS_HPP_
