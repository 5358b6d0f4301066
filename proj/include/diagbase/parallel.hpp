#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace diagbase {

/// Worker count used when a caller passes 0.
inline std::size_t default_workers() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Splits [0, n) into contiguous chunks and runs fn(begin, end, worker) on each.
/// Chunk boundaries depend only on n and the worker count; the first exception
/// thrown by any worker is rethrown on the calling thread.
template <class Fn>
void parallel_chunks(std::size_t n, std::size_t workers, Fn&& fn) {
    if (workers == 0) workers = default_workers();
    workers = std::max<std::size_t>(1, std::min(workers, n));
    if (workers <= 1) {
        if (n) fn(std::size_t{0}, n, std::size_t{0});
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex m;
    const std::size_t step = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t b = w * step, e = std::min(n, b + step);
        if (b >= e) break;
        pool.emplace_back([&, b, e, w] {
            try {
                fn(b, e, w);
            } catch (...) {
                std::lock_guard lock(m);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace diagbase
