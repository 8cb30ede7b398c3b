#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace collatz::detail {

// Processes blocks [first, last) on `workers` threads and hands results to
// `commit` on the calling thread in ascending block order, whatever order the
// workers finish in. A throwing `process` or `commit` stops the pool and the
// exception propagates. `commit` returning false stops scheduling new blocks.
template <class Result, class Process, class Commit>
void run_ordered_blocks(std::uint64_t first, std::uint64_t last, unsigned workers, Process process,
                        Commit commit) {
    if (first >= last) {
        return;
    }
    workers = std::max(1u, workers);
    const auto count = static_cast<std::size_t>(last - first);

    std::vector<std::optional<Result>> slots(count);
    std::mutex mutex;
    std::condition_variable ready;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr failure;

    auto worker = [&] {
        while (!stop.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) {
                break;
            }
            try {
                Result r = process(first + i);
                std::lock_guard lock(mutex);
                slots[i] = std::move(r);
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                stop = true;
            }
            ready.notify_all();
        }
    };

    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back(worker);
    }

    try {
        for (std::size_t i = 0; i < count; ++i) {
            Result r;
            {
                std::unique_lock lock(mutex);
                ready.wait(lock, [&] { return slots[i].has_value() || failure != nullptr; });
                if (failure) {
                    break;
                }
                r = std::move(*slots[i]);
                slots[i].reset();
            }
            if (!commit(first + i, std::move(r))) {
                stop = true;
                break;
            }
        }
    } catch (...) {
        stop = true;
        pool.clear();
        throw;
    }
    stop = true;
    pool.clear();
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace collatz::detail
