#pragma once
// Deterministic work distribution for ensemble loops. Items are processed in
// fixed blocks of kBlockSize consecutive indices; a worker owns a whole block
// and writes its partial results into per-block storage, so the final
// in-order reduction over blocks is independent of how many threads ran.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bohm {

constexpr std::size_t kBlockSize = 64;

inline std::size_t block_count(std::size_t n_items) {
    return (n_items + kBlockSize - 1) / kBlockSize;
}

// Resolve a thread-count request: 0 means "auto" (hardware concurrency,
// capped); the result is always >= 1. The block scheme makes results
// identical for every value, so this only affects speed.
inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : (hw > 8u ? 8u : hw);
}

// Run work(block_index, first_item, last_item) for every block, on up to
// n_threads workers. Blocks are claimed from an atomic counter; each is
// processed by exactly one worker. Exceptions are captured and rethrown
// (first one wins) after all workers join.
template <class BlockFn>
void parallel_blocks(std::size_t n_items, unsigned n_threads, const BlockFn& work) {
    const std::size_t n_blocks = block_count(n_items);
    if (n_blocks == 0) return;
    n_threads = resolve_threads(n_threads);
    if (n_threads > n_blocks) n_threads = static_cast<unsigned>(n_blocks);

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    const auto worker = [&]() {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= n_blocks || failed.load()) return;
            const std::size_t first = b * kBlockSize;
            const std::size_t last = std::min(first + kBlockSize, n_items);
            try {
                work(b, first, last);
            } catch (...) {
                {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
                failed.store(true);
                return;
            }
        }
    };

    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace bohm
