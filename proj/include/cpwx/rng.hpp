#pragma once

#include <cstdint>

namespace cpwx {

namespace detail {

// splitmix64 output stage (Steele, Lea, Flood; public-domain reference code).
inline std::uint64_t avalanche64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

} // namespace detail

// Substream seed derivation: two avalanche rounds over the Weyl combination
// of a master seed and a stream index. Identical (master, index) pairs give
// identical seeds on every platform.
inline std::uint64_t mix64(std::uint64_t master, std::uint64_t index) {
    const std::uint64_t a = detail::avalanche64(master + detail::kGoldenGamma);
    return detail::avalanche64(a ^ (index + detail::kGoldenGamma));
}

// Counter-based 64-bit PRNG (splitmix64). The state advances along a Weyl
// sequence and each output is an avalanche of the counter, so the sequence
// is a pure function of the seed with no platform-dependent behaviour.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    // Independent stream for one replication of a seeded experiment.
    static RngStream for_replication(std::uint64_t master_seed, std::uint64_t rep_index) {
        return RngStream(mix64(master_seed, rep_index));
    }

    std::uint64_t next_u64() {
        state_ += detail::kGoldenGamma;
        return detail::avalanche64(state_);
    }

    // Uniform on the open interval (0,1): 53-bit mantissa offset by half a step,
    // so 0 and 1 are never produced.
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    std::uint64_t seed() const { return state_; }

private:
    std::uint64_t state_;
};

} // namespace cpwx
