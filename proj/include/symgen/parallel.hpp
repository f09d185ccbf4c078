#pragma once

// Index-parallel loop capped by SYMGEN_THREADS. Results are written per index
// by the caller, so output order never depends on scheduling.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace symgen {

inline unsigned thread_budget()
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("SYMGEN_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1)
                return static_cast<unsigned>(std::min<long>(v, 256));
        } catch (const std::exception &) {
        }
    }
    return hw;
}

template <typename F> void parallel_for(std::size_t n, F &&body)
{
    unsigned threads = static_cast<unsigned>(std::min<std::size_t>(thread_budget(), n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (auto &th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace symgen
