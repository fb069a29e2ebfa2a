#pragma once

// Deterministic parallel reduction: the index range is split into contiguous
// blocks, each worker accumulates its own partial, and partials are combined
// in block order.  Totals are therefore independent of the worker count.

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace dpc {

template <typename T, typename Fn>
T parallel_block_sum(std::int64_t lo, std::int64_t hi, int workers, Fn&& body) {
    if (hi <= lo) return T{};
    if (workers < 1) workers = 1;
    std::int64_t n = hi - lo;
    int k = static_cast<int>(std::min<std::int64_t>(workers, n));
    std::vector<T> partial(k, T{});
    std::vector<std::thread> pool;
    for (int w = 0; w < k; ++w) {
        std::int64_t a = lo + n * w / k;
        std::int64_t b = lo + n * (w + 1) / k;
        pool.emplace_back([&, w, a, b] {
            T acc{};
            for (std::int64_t i = a; i < b; ++i) body(i, acc);
            partial[w] = acc;
        });
    }
    for (auto& t : pool) t.join();
    T total{};
    for (const auto& p : partial) total += p;
    return total;
}

}  // namespace dpc
