#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lastrow {

/// Runs f(i) for i in [0, count) on a few threads. Each index is handled by
/// exactly one call, so callers writing only to slot i get deterministic
/// results. The first exception thrown is rethrown after all threads join.
template <typename F>
void parallel_for(std::size_t count, F&& f, unsigned threads = 0) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::exception_ptr err;
    std::mutex mu;
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t i = t; i < count; i += threads) f(i);
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (!err) err = std::current_exception();
                }
            });
        }
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace lastrow
