// parallel.hpp -- minimal deterministic parallel loop. Work items write
// into index-addressed slots, so results do not depend on scheduling.
// STOCHTOPO_THREADS caps the worker count (default: hardware concurrency).

#ifndef STOCHTOPO_PARALLEL_HPP
#define STOCHTOPO_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace stochtopo {

inline unsigned thread_budget() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("STOCHTOPO_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
    return n;
}

/// Run fn(i) for i in [0, count) across the thread budget.
template <class Fn>
void parallel_for(std::size_t count, Fn fn) {
    const unsigned workers = std::min<std::size_t>(thread_budget(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace stochtopo

#endif  // STOCHTOPO_PARALLEL_HPP
