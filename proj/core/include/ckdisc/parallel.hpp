#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ckdisc {

inline unsigned default_jobs() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Work is handed out
// in chunks through a shared counter; fn must be safe to call concurrently
// for distinct i. Exceptions from workers are rethrown on the caller.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                         unsigned jobs = 0) {
    if (jobs == 0) jobs = default_jobs();
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(count, 1)));
    if (count == 0) return;
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    const std::size_t chunk = std::max<std::size_t>(1, count / (8 * jobs));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            if (failed.load(std::memory_order_relaxed)) return;
            const std::size_t begin = next.fetch_add(chunk);
            if (begin >= count) return;
            const std::size_t end = std::min(begin + chunk, count);
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(jobs - 1);
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

// Deterministic max-reduction over [0, count): score(i) returns the value of
// candidate i. Returns the index of the best candidate, breaking ties toward
// the smaller index, so the result does not depend on thread scheduling.
// Returns count if count == 0.
inline std::size_t parallel_argmax(std::size_t count, const std::function<double(std::size_t)>& score,
                                   unsigned jobs = 0) {
    if (count == 0) return 0;
    if (jobs == 0) jobs = default_jobs();
    std::vector<std::pair<double, std::size_t>> best(jobs, {-1.0, count});
    std::atomic<std::size_t> next{0};
    const std::size_t chunk = std::max<std::size_t>(1, count / (8 * std::max(1u, jobs)));

    auto worker = [&](unsigned me) {
        auto& local = best[me];
        for (;;) {
            const std::size_t begin = next.fetch_add(chunk);
            if (begin >= count) return;
            const std::size_t end = std::min(begin + chunk, count);
            for (std::size_t i = begin; i < end; ++i) {
                const double v = score(i);
                if (v > local.first || (v == local.first && i < local.second)) {
                    local = {v, i};
                }
            }
        }
    };

    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& th : pool) th.join();

    std::pair<double, std::size_t> top{-1.0, count};
    for (const auto& b : best) {
        if (b.second == count) continue;
        if (b.first > top.first || (b.first == top.first && b.second < top.second)) top = b;
    }
    return top.second;
}

} // namespace ckdisc
