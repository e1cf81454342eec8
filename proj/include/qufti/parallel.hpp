// qufti/parallel.hpp
//
// Deterministic task parallelism.  Work items are identified by index,
// workers fill pre-allocated per-index result slots, and every reduction in
// the library runs in fixed index order afterwards — so results are
// bit-identical regardless of thread count or scheduling.

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace qufti {

/// Threads to use when the caller passes 0: the hardware concurrency,
/// at least 1.
inline std::size_t default_thread_count() noexcept {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<std::size_t>(hw);
}

/// Runs fn(i) for every i in [0, n), split into contiguous blocks across
/// `threads` workers (0 = auto).  fn must only write to state owned by index
/// i.  The first exception thrown by any worker is rethrown after all
/// workers have joined.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
    if (n == 0) return;
    if (threads == 0) threads = default_thread_count();
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t w = 0; w < threads; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(begin + chunk, n);
        workers.emplace_back([&, w, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (std::thread& worker : workers) worker.join();
    for (const std::exception_ptr& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

}  // namespace qufti
