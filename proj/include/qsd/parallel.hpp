#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace qsd {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Static contiguous split of [0, n).  Each worker sees a fixed range, so any
// per-index output slot assignment is independent of the thread count.
template <typename Fn>
void parallel_ranges(size_t n, int threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (n == 0) return;
    if (threads <= 1 || n < 2) {
        fn(size_t{0}, n);
        return;
    }
    size_t t = std::min<size_t>(static_cast<size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (size_t i = 0; i < t; ++i) {
        size_t lo = n * i / t;
        size_t hi = n * (i + 1) / t;
        pool.emplace_back([lo, hi, &fn] { fn(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace qsd
