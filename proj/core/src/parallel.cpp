#include "hhgsq/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hhgsq {

int default_thread_count() {
    if (const char* env = std::getenv("HHGSQ_THREADS")) {
        try {
            int v = std::stoi(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

int resolve_thread_count(int requested) {
    return requested > 0 ? requested : default_thread_count();
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    if (n == 0) return;
    std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(resolve_thread_count(threads)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }

    std::atomic<bool> failed{false};
    std::mutex mtx;
    std::size_t failed_index = n;
    std::exception_ptr first_error;

    auto run = [&](std::size_t w) {
        for (std::size_t i = w; i < n; i += workers) {
            if (failed.load(std::memory_order_relaxed)) {
                std::lock_guard<std::mutex> lock(mtx);
                if (i > failed_index) return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mtx);
                if (i < failed_index) {
                    failed_index = i;
                    first_error = std::current_exception();
                }
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
    run(0);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace hhgsq
