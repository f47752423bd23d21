#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace regperc {

// Worker count resolution: REGPERC_WORKERS env var wins, then the requested
// value, then hardware concurrency.
inline std::size_t resolve_workers(std::size_t requested) {
    if (const char* env = std::getenv("REGPERC_WORKERS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    if (requested > 0) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? hc : 1;
}

// Run fn(i) for i in [0, n_tasks) on a bounded pool. Tasks must write only to
// their own output slots; aggregation after the join is then independent of
// scheduling. The first task exception is rethrown.
inline void parallel_tasks(std::size_t n_tasks, std::size_t workers,
                           const std::function<void(std::size_t)>& fn) {
    workers = std::min(resolve_workers(workers), std::max<std::size_t>(n_tasks, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n_tasks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n_tasks || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true);
                    return;
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace regperc
