#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace presto {

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

// Dynamic work distribution over indices [0, n): workers claim chunks of
// `grain` indices from a shared counter and call body(worker_id, i) for each.
// Claimed chunks always run to completion, so with a deadline the executed
// set is exactly the contiguous prefix [0, r) where r is the return value;
// without one, r == n. Worker count 1 runs inline on the calling thread.
// Determinism contract: body must depend only on i (plus shared read-only
// state) and write only to slot i, never on worker_id or claiming order.
template <class Body>
std::int64_t parallel_for(std::int64_t n, int workers, std::int64_t grain, Body&& body,
                          Deadline deadline = std::nullopt) {
    if (n <= 0) return 0;
    if (grain < 1) grain = 1;

    std::atomic<std::int64_t> next_chunk{0};
    std::atomic<bool> failed{false};
    const std::int64_t chunk_count = (n + grain - 1) / grain;

    auto worker = [&](int worker_id) {
        while (!failed.load(std::memory_order_relaxed)) {
            if (deadline && std::chrono::steady_clock::now() >= *deadline) break;
            const std::int64_t chunk = next_chunk.fetch_add(1, std::memory_order_relaxed);
            if (chunk >= chunk_count) break;
            const std::int64_t lo = chunk * grain;
            const std::int64_t hi = std::min(n, lo + grain);
            for (std::int64_t i = lo; i < hi; ++i) body(worker_id, i);
        }
    };

    std::exception_ptr first_error;
    if (workers <= 1) {
        worker(0);
    } else {
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    worker(w);
                } catch (...) {
                    failed.store(true, std::memory_order_relaxed);
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    const std::int64_t claimed = std::min(next_chunk.load(), chunk_count);
    return std::min(n, claimed * grain);
}

}  // namespace presto
