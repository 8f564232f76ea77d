#pragma once

#include <cstddef>
#include <cstdint>

namespace hfaos {

/// Counter-based pseudo-random stream (splitmix64 applied to an
/// incrementing counter). Integer-only state, so the same seed yields the
/// same draw sequence on every platform. Independent substreams are derived
/// from (seed, stream id), one per trial / per purpose.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : counter_(seed) {}

    /// Derives a decorrelated stream from a parent seed and a stream id.
    static RngStream substream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_double();

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi);

    /// Uniform integer in {0, ..., n-1}; unbiased via rejection. n >= 1.
    std::size_t next_below(std::size_t n);

    std::uint64_t state() const { return counter_; }

private:
    std::uint64_t counter_;
};

} // namespace hfaos
