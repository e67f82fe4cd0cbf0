#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace truncprod {

/// Runs f(i) for i in [0, count) on up to `workers` threads. Results are
/// returned in index order, so the outcome is independent of scheduling.
/// The first exception thrown by any task is rethrown on the caller.
template <typename F>
auto parallel_map(int count, int workers, F&& f) -> std::vector<decltype(f(0))> {
    using R = decltype(f(0));
    std::vector<R> results(count);
    if (count == 0) return results;
    workers = std::max(1, std::min(workers, count));

    if (workers == 1) {
        for (int i = 0; i < count; ++i) results[i] = f(i);
        return results;
    }

    std::atomic<int> next{0};
    std::exception_ptr error;
    std::once_flag error_once;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    results[i] = f(i);
                } catch (...) {
                    std::call_once(error_once, [&] { error = std::current_exception(); });
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace truncprod
