// SPDX-License-Identifier: Apache-2.0
//
// v2vchan - vehicle-to-vehicle mmWave channel synthesis and analysis toolkit
// Copyright (C) 2026 v2vchan contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef V2V_PARALLEL_HPP
#define V2V_PARALLEL_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace v2v {

// Thread count: V2V_THREADS if set and >= 1, else hardware concurrency.
inline unsigned thread_count()
{
    if (const char *env = std::getenv("V2V_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1)
            return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs fn(i) for i in [begin, end) over contiguous index blocks, one block
// per worker. Each index is visited exactly once by exactly one thread, so
// fn may write to disjoint per-index slots without synchronization. Results
// are bit-identical for any thread count as long as fn(i) depends only on i.
template <typename Fn> void parallel_for(std::size_t begin, std::size_t end, Fn &&fn)
{
    const std::size_t total = end > begin ? end - begin : 0;
    if (total == 0)
        return;
    const std::size_t workers = std::min<std::size_t>(thread_count(), total);
    if (workers <= 1) {
        for (std::size_t i = begin; i < end; ++i)
            fn(i);
        return;
    }
    const std::size_t chunk = (total + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = begin + w * chunk;
        const std::size_t hi = std::min(end, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([lo, hi, &fn]() {
            for (std::size_t i = lo; i < hi; ++i)
                fn(i);
        });
    }
    for (auto &t : pool)
        t.join();
}

// Like parallel_for, but each worker first builds private scratch state via
// make_state() (called inside the worker thread) and fn(state, i) may mutate
// it. Use for per-worker FFT plans and gather buffers.
template <typename MakeState, typename Fn>
void parallel_for_stateful(std::size_t begin, std::size_t end, MakeState &&make_state, Fn &&fn)
{
    const std::size_t total = end > begin ? end - begin : 0;
    if (total == 0)
        return;
    const std::size_t workers = std::min<std::size_t>(thread_count(), total);
    if (workers <= 1) {
        auto state = make_state();
        for (std::size_t i = begin; i < end; ++i)
            fn(state, i);
        return;
    }
    const std::size_t chunk = (total + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = begin + w * chunk;
        const std::size_t hi = std::min(end, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([lo, hi, &make_state, &fn]() {
            auto state = make_state();
            for (std::size_t i = lo; i < hi; ++i)
                fn(state, i);
        });
    }
    for (auto &t : pool)
        t.join();
}

} // namespace v2v

#endif
