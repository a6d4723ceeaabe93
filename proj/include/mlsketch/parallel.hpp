#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace mlsketch::detail {

/// Fixed-size chunking for reproducible parallel reductions.
///
/// The item range [0, count) is cut into chunks of `chunk_size` regardless of
/// the thread count; workers claim chunks from an atomic counter and write
/// results into per-chunk slots the caller owns.  Because chunk boundaries and
/// the caller's subsequent chunk-order reduction are independent of how many
/// threads ran, the combined result is bit-identical for any `threads`.
inline void parallel_chunks(std::size_t count, std::size_t chunk_size, int threads,
                            const std::function<void(std::size_t chunk_index,
                                                     std::size_t begin,
                                                     std::size_t end)>& body) {
    if (count == 0) {
        return;
    }
    const std::size_t n_chunks = (count + chunk_size - 1) / chunk_size;
    if (threads <= 1 || n_chunks == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            body(c, c * chunk_size, std::min(count, (c + 1) * chunk_size));
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) {
                return;
            }
            body(c, c * chunk_size, std::min(count, (c + 1) * chunk_size));
        }
    };
    std::vector<std::thread> pool;
    const std::size_t n_workers =
        std::min<std::size_t>(static_cast<std::size_t>(threads), n_chunks);
    pool.reserve(n_workers);
    for (std::size_t t = 0; t < n_workers; ++t) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) {
        t.join();
    }
}

/// Default chunk width used by every estimator reduction in the project.
inline constexpr std::size_t kReductionChunk = 64;

} // namespace mlsketch::detail
