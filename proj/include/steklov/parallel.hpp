// Index-based parallel dispatch. Worker count is capped by the
// STEKLOV_THREADS environment variable; results are written by index so the
// output never depends on scheduling.

#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace steklov {

inline unsigned worker_cap() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("STEKLOV_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return hw;
}

// workers = 0 uses the environment-capped default.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, unsigned workers_hint = 0) {
    const unsigned cap = workers_hint ? workers_hint : worker_cap();
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(cap, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto body = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace steklov
