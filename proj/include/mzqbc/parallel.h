// Copyright 2026 The mzqbc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MZQBC_PARALLEL_H
#define MZQBC_PARALLEL_H

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mzqbc {

/// Evaluates fn(i) for i in [0, count) on up to `threads` worker threads and
/// returns the results in index order. fn must be safe to call concurrently;
/// the output is identical for every thread count.
template <typename Fn>
auto map_trials(size_t count, unsigned threads, Fn &&fn) -> std::vector<decltype(fn(size_t{}))> {
    using Result = decltype(fn(size_t{}));
    std::vector<Result> out(count);
    threads = std::max(1u, threads);
    if (threads == 1 || count < 2) {
        for (size_t i = 0; i < count; i++) {
            out[i] = fn(i);
        }
        return out;
    }
    threads = static_cast<unsigned>(std::min<size_t>(threads, count));
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; t++) {
        pool.emplace_back([&, t]() {
            try {
                for (size_t i = t; i < count; i += threads) {
                    out[i] = fn(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

}  // namespace mzqbc

#endif
