#include "hfaos/rng.hpp"

namespace hfaos {

namespace {

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

RngStream RngStream::substream(std::uint64_t seed, std::uint64_t stream_id) {
    // Two mixing rounds keep adjacent (seed, id) pairs decorrelated.
    std::uint64_t s = mix(seed + 0x9E3779B97F4A7C15ULL);
    s = mix(s ^ (stream_id * 0xD2B74407B1CE6E93ULL + 0x8CB92BA72F3D8DD7ULL));
    return RngStream(s);
}

std::uint64_t RngStream::next_u64() {
    counter_ += 0x9E3779B97F4A7C15ULL;
    return mix(counter_);
}

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
}

std::size_t RngStream::next_below(std::size_t n) {
    if (n <= 1) return 0;
    const std::uint64_t span = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r = next_u64();
    while (r >= limit) r = next_u64();
    return static_cast<std::size_t>(r % span);
}

} // namespace hfaos
