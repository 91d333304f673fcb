#ifndef CPPSFS_RANDOM_HPP
#define CPPSFS_RANDOM_HPP

#include <cstdint>

namespace cppsfs {

/// Counter-based random stream.  Every variate is a pure function of
/// (seed, stream_id, draw index), so replicate streams can be created
/// cheaply and used concurrently without sharing state.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept
        : base_(mix(mix(seed) ^ (stream_id * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL))),
          counter_(0) {}

    std::uint64_t next_u64() noexcept {
        counter_ += 0x9E3779B97F4A7C15ULL;
        return mix(base_ + counter_);
    }

    /// Uniform on the open interval (0,1).  Never returns 0 or 1, so
    /// inverse-CDF formulas are safe at support endpoints.
    double next_open01() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    std::uint64_t draws() const noexcept { return counter_ / 0x9E3779B97F4A7C15ULL; }

private:
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t base_;
    std::uint64_t counter_;
};

} // namespace cppsfs

#endif
