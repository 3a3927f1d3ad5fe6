#pragma once

#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace morlax {

// Runs fn(begin, end) over contiguous chunks of [0, n). With threads <= 1
// the call is inlined on the caller's thread. Work must be independent per
// index; results must be written to disjoint slots so that the outcome is
// identical for every thread count. The first worker exception is rethrown.
inline void parallel_for(int n, int threads,
                         const std::function<void(int, int)>& fn) {
    if (n <= 0) return;
    if (threads <= 1 || n == 1) {
        fn(0, n);
        return;
    }
    const int workers = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        const int begin = static_cast<int>(
            static_cast<long long>(n) * w / workers);
        const int end = static_cast<int>(
            static_cast<long long>(n) * (w + 1) / workers);
        pool.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace morlax
