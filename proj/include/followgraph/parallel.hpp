#pragma once

#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace followgraph {

// Thread budget: hardware concurrency capped by FOLLOWGRAPH_THREADS.
inline std::size_t thread_budget() {
    std::size_t hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("FOLLOWGRAPH_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1 && static_cast<std::size_t>(v) < hw) hw = static_cast<std::size_t>(v);
    }
    return hw;
}

// Reduction over [0, n) in fixed-size blocks combined pairwise in index
// order. The combination tree depends only on n, so the result is
// bit-identical for any thread count.
//
// BlockFn: T(std::size_t begin, std::size_t end)
// Combine: T(T, T)
template <typename T, typename BlockFn, typename Combine>
T block_reduce(std::size_t n, const T& identity, BlockFn block_fn, Combine combine,
               std::size_t threads = 0, std::size_t block_size = 2048) {
    if (n == 0) return identity;
    const std::size_t n_blocks = (n + block_size - 1) / block_size;
    std::vector<T> partial(n_blocks, identity);

    if (threads == 0) threads = thread_budget();
    threads = std::min(threads, n_blocks);

    auto run = [&](std::size_t worker) {
        for (std::size_t b = worker; b < n_blocks; b += threads) {
            std::size_t begin = b * block_size;
            std::size_t end = std::min(begin + block_size, n);
            partial[b] = block_fn(begin, end);
        }
    };
    if (threads <= 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(run, t);
        for (auto& th : pool) th.join();
    }

    // Pairwise tree over block results, order fixed by block index.
    std::vector<T> level = std::move(partial);
    while (level.size() > 1) {
        std::vector<T> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2)
            next.push_back(combine(level[i], level[i + 1]));
        if (level.size() % 2 == 1) next.push_back(level.back());
        level = std::move(next);
    }
    return level.front();
}

}  // namespace followgraph
