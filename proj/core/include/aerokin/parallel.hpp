#ifndef AEROKIN_PARALLEL_HPP
#define AEROKIN_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace aerokin {

/// Runs fn(begin, end) over a contiguous split of [0, n).
///
/// Every index is processed by exactly one invocation and the per-index work
/// must not depend on the partition, so results are identical for any thread
/// count as long as writes go to disjoint locations.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    if (threads <= 1 || n < 2) {
        fn(0, n);
        return;
    }
    std::size_t nt = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::size_t chunk = n / nt, rem = n % nt, begin = 0;
    for (std::size_t t = 0; t < nt; ++t) {
        std::size_t len = chunk + (t < rem ? 1 : 0);
        pool.emplace_back(fn, begin, begin + len);
        begin += len;
    }
    for (auto& th : pool) th.join();
}

/// Order-deterministic parallel sum: [0, n) is cut into a fixed number of
/// chunks independent of the thread count; chunk partials are accumulated
/// sequentially within a chunk and merged in chunk order.
inline double deterministic_sum(std::size_t n, int threads,
                                const std::function<double(std::size_t)>& term,
                                int chunks = 64) {
    if (n == 0) return 0.0;
    std::size_t nc = std::min<std::size_t>(chunks, n);
    std::vector<double> partial(nc, 0.0);
    parallel_for(nc, threads, [&](std::size_t c0, std::size_t c1) {
        for (std::size_t c = c0; c < c1; ++c) {
            std::size_t lo = n * c / nc, hi = n * (c + 1) / nc;
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += term(i);
            partial[c] = s;
        }
    });
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

}  // namespace aerokin

#endif
