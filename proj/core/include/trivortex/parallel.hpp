#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace trivortex {

/// Runs fn(i) for i in [0, n) across hardware threads. Tasks must be
/// independent; callers keep determinism by writing to pre-sized slots.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (n <= 1 || hw == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, n));
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (std::size_t i = w; i < n; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace trivortex
