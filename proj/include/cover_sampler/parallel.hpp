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

#ifndef COVER_SAMPLER_PARALLEL_HPP_
#define COVER_SAMPLER_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cover_sampler {

// Worker count: COVER_SAMPLER_THREADS if set to a positive integer (capped at
// hardware concurrency when that is known), otherwise hardware concurrency.
std::size_t worker_count();

// Calls fn(worker, begin, end) over contiguous index ranges covering
// [0, count). Range boundaries depend only on count and the worker count,
// so callers that key randomness on the index get reproducible results.
// The first exception thrown by any worker is rethrown on the caller.
template <typename Fn>
void parallel_ranges(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::max<std::size_t>(
      1, std::min(worker_count(), count == 0 ? std::size_t{1} : count));
  if (workers == 1) {
    fn(std::size_t{0}, std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> threads;
  std::exception_ptr failure;
  std::mutex failure_mu;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    threads.emplace_back([&, w, begin, end] {
      try {
        fn(w, begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Calls fn(index) for every index in [0, count).
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  parallel_ranges(count, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
  });
}

}  // namespace cover_sampler

#endif  // COVER_SAMPLER_PARALLEL_HPP_
