#pragma once
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace resum {

// Worker count resolution: explicit request > RESUM_WORKERS > 1.
inline std::size_t resolve_workers(std::size_t requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RESUM_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return std::size_t(v);
    }
    return 1;
}

// Static block partition of [0, n) over the workers; the first exception
// thrown by any worker is rethrown on the caller after all threads join.
template <class F>
void parallel_for(std::size_t n, std::size_t workers, F&& body) {
    workers = std::min(resolve_workers(workers), n == 0 ? std::size_t(1) : n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first;
    std::mutex mu;
    std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(mu);
                if (!first) first = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first) std::rethrow_exception(first);
}

} // namespace resum
