// Copyright 2026 The dttc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DTTC_SRC_PARALLEL_HPP_
#define DTTC_SRC_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace dttc::internal {

// Runs `search(begin, end, stop)` over contiguous chunks of [0, n) and returns
// the hit of the lowest chunk that has one, so the answer matches a sequential
// scan. `search` must return std::optional<T> and may poll `stop(begin)` to
// learn that an earlier chunk already found something. `work_per_task` is a
// rough cost used to decide whether threads are worth starting.
template <typename T, typename Search>
std::optional<T> first_hit(std::size_t n, std::size_t work_per_task,
                           Search search) {
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  if (n * work_per_task < (std::size_t{1} << 16)) workers = 1;
  workers = std::min(workers, std::max<std::size_t>(n, 1));

  std::atomic<std::size_t> best_chunk{workers};
  auto stop = [&](std::size_t chunk) { return best_chunk.load() < chunk; };

  if (workers == 1) return search(std::size_t{0}, n, [](std::size_t) { return false; });

  std::vector<std::optional<T>> hits(workers);
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    const std::size_t chunk_size = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        const std::size_t begin = std::min(n, w * chunk_size);
        const std::size_t end = std::min(n, begin + chunk_size);
        try {
          hits[w] = search(begin, end, [&](std::size_t) { return stop(w); });
          if (hits[w]) {
            std::size_t cur = best_chunk.load();
            while (w < cur && !best_chunk.compare_exchange_weak(cur, w)) {
            }
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (std::size_t w = 0; w < workers; ++w) {
    if (errors[w]) std::rethrow_exception(errors[w]);
    if (hits[w]) return hits[w];
  }
  return std::nullopt;
}

}  // namespace dttc::internal

#endif  // DTTC_SRC_PARALLEL_HPP_
