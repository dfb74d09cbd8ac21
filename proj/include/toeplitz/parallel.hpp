#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

#include "toeplitz/common.hpp"

namespace toeplitz {

/// Runs fn(i) for i in [0, count) on up to worker_threads() threads.
///
/// Indices are split into contiguous static chunks, so each slot is written by
/// exactly one thread and results do not depend on scheduling. The first
/// exception (in index order of the chunks) is rethrown.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(worker_threads(), count);
    if (workers <= 1 || count < 8) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                const std::size_t end = std::min(count, (w + 1) * chunk);
                for (std::size_t i = w * chunk; i < end; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace toeplitz
