// Copyright 2026 The measrepro Authors
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

#ifndef MEASREPRO_PARALLEL_H_
#define MEASREPRO_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace measrepro {

/// Splits [0, total) into fixed chunks of `chunk_size`, evaluates
/// `work(chunk_index, begin, end)` for each, and returns the per-chunk results
/// in chunk order. Chunk boundaries do not depend on the worker count, so a
/// caller that folds the results left to right gets the same answer on any
/// machine.
template <typename Work>
auto map_chunks(std::size_t total, std::size_t chunk_size, Work work) {
    using Result = decltype(work(std::size_t{}, std::size_t{}, std::size_t{}));
    chunk_size = std::max<std::size_t>(chunk_size, 1);
    const std::size_t chunks = (total + chunk_size - 1) / chunk_size;
    std::vector<Result> results(chunks);
    const std::size_t workers = std::max<unsigned>(1, std::thread::hardware_concurrency());
    if (workers == 1 || chunks <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) {
            results[c] = work(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
        }
        return results;
    }
    for (std::size_t base = 0; base < chunks; base += workers) {
        std::vector<std::future<Result>> pending;
        for (std::size_t c = base; c < std::min(chunks, base + workers); ++c) {
            pending.push_back(std::async(std::launch::async, [&work, c, chunk_size, total] {
                return work(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
            }));
        }
        for (std::size_t i = 0; i < pending.size(); ++i) {
            results[base + i] = pending[i].get();
        }
    }
    return results;
}

}  // namespace measrepro

#endif  // MEASREPRO_PARALLEL_H_
