#ifndef AMBC_PARALLEL_HPP
#define AMBC_PARALLEL_HPP

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace ambc {

/// Neumaier compensated accumulator. Chunk sums reduced through it in a fixed
/// order give bit-identical totals for any worker count.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline std::uint64_t chunk_count(std::uint64_t n, std::uint64_t chunk_size) {
    return chunk_size == 0 ? 0 : (n + chunk_size - 1) / chunk_size;
}

/// Runs fn(chunk_index, begin, end) over the fixed partition of [0, n) into
/// chunks of chunk_size. Chunks must be independent; the caller reduces
/// per-chunk results in chunk order, so values never depend on workers.
inline void for_each_chunk(
    std::uint64_t n, std::uint64_t chunk_size, unsigned workers,
    const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& fn) {
    if (n == 0) return;
    const std::uint64_t chunks = chunk_count(n, chunk_size);
    if (workers == 0) workers = std::thread::hardware_concurrency();
    if (workers <= 1 || chunks <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) {
            const std::uint64_t begin = c * chunk_size;
            fn(c, begin, std::min(begin + chunk_size, n));
        }
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= chunks) return;
            const std::uint64_t begin = c * chunk_size;
            fn(c, begin, std::min(begin + chunk_size, n));
        }
    };
    std::vector<std::thread> pool;
    const unsigned spawned = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, chunks));
    pool.reserve(spawned);
    for (unsigned i = 0; i < spawned; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
}

}  // namespace ambc

#endif  // AMBC_PARALLEL_HPP
