#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace twk {

/// Worker cap from TWK_THREADS (default 1; deterministic either way
/// because results are written to preassigned slots).
inline unsigned worker_count() {
    const char* env = std::getenv("TWK_THREADS");
    if (!env) return 1;
    long n = std::strtol(env, nullptr, 10);
    if (n < 1) return 1;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return static_cast<unsigned>(n) < hw ? static_cast<unsigned>(n) : hw;
}

/// Run fn(i) for i in [0, n), chunked over worker_count() threads.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    unsigned workers = worker_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = lo + chunk < n ? lo + chunk : n;
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace twk
