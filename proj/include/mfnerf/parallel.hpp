// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace mfnerf {

/// Worker-thread budget: MF_THREADS env var when set (0 means serial),
/// hardware concurrency otherwise.
inline int default_thread_count() {
    if (const char* env = std::getenv("MF_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v <= 0) return 0;
        return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Splits [0, total) into at most `threads` contiguous chunks and runs
/// fn(begin, end, chunk_index) for each. threads <= 1 runs inline on the
/// calling thread. The number and order of chunks is deterministic for a
/// fixed thread count. An exception thrown by any chunk is rethrown on the
/// calling thread (first chunk wins).
inline void parallel_chunks(int total, int threads,
                            const std::function<void(int, int, int)>& fn) {
    if (total <= 0) return;
    const int n = std::max(1, std::min(threads, total));
    if (n == 1) {
        fn(0, total, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
    const int chunk = (total + n - 1) / n;
    for (int i = 0; i < n; ++i) {
        const int begin = i * chunk;
        const int end = std::min(total, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, &errors, begin, end, i] {
            try {
                fn(begin, end, i);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace mfnerf
