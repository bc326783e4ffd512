#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace latred {

// Run fn(i) for i in [0, count) on up to `jobs` threads. Work items must be
// independent; callers get determinism by writing results into per-index
// slots or by accumulating with commutative operations only.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = jobs < static_cast<int>(count) ? jobs : static_cast<int>(count);
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace latred
