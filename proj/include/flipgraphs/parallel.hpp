#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace flipgraphs {

// Splits [0, total) into contiguous chunks, one worker per chunk, invoking
// fn(begin, end, chunk). Callers write into preallocated slots only, so the
// result is identical to the single-threaded run regardless of scheduling.
template <typename Fn>
void parallel_chunks(long long total, unsigned threads, Fn&& fn) {
    if (threads <= 1 || total < 2) {
        fn(0ll, total, 0u);
        return;
    }
    const unsigned workers =
        static_cast<unsigned>(std::min<long long>(threads, total));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        const long long begin = total * t / workers;
        const long long end = total * (t + 1) / workers;
        pool.emplace_back([&fn, begin, end, t] { fn(begin, end, t); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace flipgraphs
