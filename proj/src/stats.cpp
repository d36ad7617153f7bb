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

#include "cover_sampler/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cover_sampler/error.hpp"

namespace cover_sampler {

void RunningStats::add(double x) {
  ++count_;
  const double d = x - mean_;
  mean_ += d / static_cast<double>(count_);
  m2_ += d * (x - mean_);
}

void RunningStats::merge(const RunningStats& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double n_a = static_cast<double>(count_);
  const double n_b = static_cast<double>(other.count_);
  const double d = other.mean_ - mean_;
  const double n = n_a + n_b;
  mean_ += d * n_b / n;
  m2_ += other.m2_ + d * d * n_a * n_b / n;
  count_ += other.count_;
}

double RunningStats::variance() const {
  return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

double RunningStats::stddev() const { return std::sqrt(variance()); }

double RunningStats::standard_error() const {
  return count_ == 0 ? 0.0 : stddev() / std::sqrt(static_cast<double>(count_));
}

ProportionEstimate proportion(std::size_t successes, std::size_t accepted,
                              std::size_t trials) {
  ProportionEstimate est;
  est.accepted = accepted;
  est.trials = trials;
  if (accepted == 0) return est;
  const double n = static_cast<double>(accepted);
  est.p_hat = static_cast<double>(successes) / n;
  est.ci95 = kZ95 * std::sqrt(est.p_hat * (1.0 - est.p_hat) / n);
  return est;
}

double ks_distance(std::span<const std::int64_t> a,
                   std::span<const std::int64_t> b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "ks_distance needs two nonempty samples");
  }
  std::vector<std::int64_t> xs(a.begin(), a.end());
  std::vector<std::int64_t> ys(b.begin(), b.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const double na = static_cast<double>(xs.size());
  const double nb = static_cast<double>(ys.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double best = 0.0;
  while (i < xs.size() || j < ys.size()) {
    // Advance past every copy of the next distinct value in both samples.
    std::int64_t v;
    if (j == ys.size() || (i < xs.size() && xs[i] <= ys[j])) {
      v = xs[i];
    } else {
      v = ys[j];
    }
    while (i < xs.size() && xs[i] == v) ++i;
    while (j < ys.size() && ys[j] == v) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / na -
                                   static_cast<double>(j) / nb));
  }
  return best;
}

LinearFit fit_linear(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "fit_linear needs two equally sized samples of length >= 2");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxx == 0.0 ? 0.0 : sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    rss += r * r;
  }
  fit.residual_norm = std::sqrt(rss);
  return fit;
}

}  // namespace cover_sampler
