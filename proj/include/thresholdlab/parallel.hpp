#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace tlab {

// Worker cap: THRESHOLD_LAB_THREADS if set (>= 1), else hardware concurrency.
inline int thread_budget() {
    if (const char* env = std::getenv("THRESHOLD_LAB_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, count) on up to thread_budget() workers. The caller
// owns determinism: fn writes only to its own slot.
template <class F>
void parallel_for_index(int count, F&& fn) {
    const int workers = std::min(count, thread_budget());
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace tlab
