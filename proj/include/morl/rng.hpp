#pragma once

#include <cmath>
#include <cstdint>

namespace morl {

// Counter-free splitmix64 stream. A given (seed, stream_id) pair always
// reproduces the same draw sequence, independent of platform and of any
// other stream, which is what per-slot determinism rests on.
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id) {
        state_ = mix(seed + 0x9E3779B97F4A7C15ULL);
        state_ = mix(state_ ^ mix(stream_id + 0xBF58476D1CE4E5B9ULL));
        if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). n must be > 0; bias is negligible for the
    // grid/bag sizes used here but we reject to keep draws exact.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r = next_u64();
        while (r >= limit) r = next_u64();
        return r % n;
    }

    // Unit-rate exponential.
    double exponential() { return -std::log1p(-uniform01()); }

    // Standard normal (Box-Muller, one value per call).
    double normal() {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    // Derive an independent child stream; advances this stream by one draw.
    RngStream split() { return RngStream(seed_, next_u64()); }

    // Child stream at a fixed index; does not advance this stream.
    RngStream substream(std::uint64_t index) const {
        return RngStream(seed_, mix(stream_id_ + 0x2545F4914F6CDD1DULL * (index + 1)));
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t state_;
};

}  // namespace morl
