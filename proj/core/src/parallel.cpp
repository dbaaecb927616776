#include "mixkin/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace mixkin {

namespace {
std::atomic<int> g_thread_count{0};

int effective_threads(std::int64_t n) {
    int requested = g_thread_count.load(std::memory_order_relaxed);
    if (requested <= 0) {
        requested = static_cast<int>(std::thread::hardware_concurrency());
        if (requested <= 0) requested = 1;
    }
    return static_cast<int>(std::min<std::int64_t>(requested, n));
}
} // namespace

void set_thread_count(int count) {
    g_thread_count.store(count < 0 ? 0 : count, std::memory_order_relaxed);
}

int thread_count() {
    int requested = g_thread_count.load(std::memory_order_relaxed);
    if (requested > 0) return requested;
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    return hw > 0 ? hw : 1;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& body) {
    if (n <= 0) return;
    const int nthreads = effective_threads(n);
    if (nthreads <= 1) {
        body(0, n);
        return;
    }

    const std::int64_t chunk = (n + nthreads - 1) / nthreads;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nthreads));
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(nthreads - 1));

    auto run_chunk = [&](int t) {
        const std::int64_t begin = t * chunk;
        const std::int64_t end = std::min<std::int64_t>(begin + chunk, n);
        if (begin >= end) return;
        try {
            body(begin, end);
        } catch (...) {
            errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
    };

    for (int t = 1; t < nthreads; ++t) workers.emplace_back(run_chunk, t);
    run_chunk(0);
    for (auto& w : workers) w.join();

    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace mixkin
