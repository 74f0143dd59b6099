// SPDX-License-Identifier: Apache-2.0
//
// whpulse - pulse design for Weyl-Heisenberg signaling over WSSUS channels
// Copyright (C) 2026 The whpulse authors
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

// Internal thread helpers. Work is split into a fixed number of chunks so that
// reductions over chunk results do not depend on the worker count.

#ifndef WHP_PARALLEL_HPP
#define WHP_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace whp::detail
{
    // WHP_NUM_THREADS overrides the hardware concurrency.
    inline unsigned worker_count()
    {
        if (const char *env = std::getenv("WHP_NUM_THREADS"))
        {
            const long v = std::strtol(env, nullptr, 10);
            if (v > 0)
                return unsigned(v);
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

    // Calls body(i) for i in [0, n) on up to worker_count() threads.
    template <class Body>
    void parallel_for(std::size_t n, Body &&body)
    {
        const unsigned workers = unsigned(std::min<std::size_t>(worker_count(), n));
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                body(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_lock;
        auto run = [&]
        {
            for (std::size_t i = next++; i < n; i = next++)
            {
                try
                {
                    body(i);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lock(error_lock);
                    if (!error)
                        error = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 1; w < workers; ++w)
            pool.emplace_back(run);
        run();
        for (auto &th : pool)
            th.join();
        if (error)
            std::rethrow_exception(error);
    }
}

#endif
