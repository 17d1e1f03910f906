#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace planted {

// Parallel map over [0, count). Each index is processed exactly once and
// workers write only to their own output slots, so results do not depend on
// the schedule. Honors PLANTED_THREADS if set.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    unsigned threads = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("PLANTED_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) threads = static_cast<unsigned>(t);
    }
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    threads = std::min<std::size_t>(threads, count);
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = cursor.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace planted
