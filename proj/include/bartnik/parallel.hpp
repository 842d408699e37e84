#ifndef BARTNIK_PARALLEL_HPP
#define BARTNIK_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace bartnik {

inline int thread_count() {
    const char* e = std::getenv("BARTNIK_THREADS");
    const int n = e ? std::atoi(e) : 1;
    return n < 1 ? 1 : n;
}

// Each fn(i) must write only its own output slot; results are then
// independent of the schedule.
template <class F>
void parallel_for(int n, F&& fn) {
    const int T = std::min(thread_count(), n);
    if (T <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(T);
    for (int t = 0; t < T; ++t)
        pool.emplace_back([&] {
            for (int i; (i = next.fetch_add(1)) < n;) fn(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace bartnik

#endif
