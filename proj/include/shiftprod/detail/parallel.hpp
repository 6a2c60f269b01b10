#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace shiftprod::detail {

/// Resolves a thread count: an explicit request wins, then the
/// SHIFTPROD_THREADS environment variable, then the hardware count.
inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) {
        return requested;
    }
    if (const char* env = std::getenv("SHIFTPROD_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) {
            return static_cast<unsigned>(v);
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs fn(chunk_index, begin, end) over [0, n) split into up to `threads`
/// contiguous chunks. Chunks never overlap, so per-chunk outputs can be
/// merged in index order for a schedule-independent result.
template <typename Fn>
void parallel_chunks(std::uint64_t n, unsigned threads, Fn&& fn) {
    if (n == 0) {
        return;
    }
    const std::uint64_t n_chunks = std::min<std::uint64_t>(threads == 0 ? 1 : threads, n);
    if (n_chunks <= 1) {
        fn(std::size_t{0}, std::uint64_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_chunks));
    const std::uint64_t step = n / n_chunks;
    const std::uint64_t rem = n % n_chunks;
    std::uint64_t begin = 0;
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
        const std::uint64_t end = begin + step + (c < rem ? 1 : 0);
        pool.emplace_back([&fn, c, begin, end] { fn(static_cast<std::size_t>(c), begin, end); });
        begin = end;
    }
    for (auto& t : pool) {
        t.join();
    }
}

}  // namespace shiftprod::detail
