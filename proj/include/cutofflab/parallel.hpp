#pragma once

#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cutofflab {

// Worker count for grid evaluation. CUTOFFLAB_THREADS caps it; 0 or unset
// means hardware concurrency.
inline std::size_t worker_count() {
    static const std::size_t n = [] {
        std::size_t hw = std::thread::hardware_concurrency();
        if (hw == 0) hw = 1;
        if (const char* env = std::getenv("CUTOFFLAB_THREADS")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && v > 0 && static_cast<std::size_t>(v) < hw)
                return static_cast<std::size_t>(v);
        }
        return hw;
    }();
    return n;
}

// Runs f(i) for i in [0, n). Results must be written to caller-owned slots
// indexed by i, so the output is identical for any worker count. The first
// exception thrown by any task is rethrown after all workers join.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    const std::size_t workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace cutofflab
