#pragma once

#include <array>
#include <cstdint>

namespace horoxt {

// Philox4x32-10 block cipher (Salmon et al., SC'11).  Counter-based: output is a pure
// function of (counter, key), so independent streams are cheap and reproducible.
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> x,
                                               std::array<std::uint32_t, 2> k) {
    constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t(M0) * x[0];
        const std::uint64_t p1 = std::uint64_t(M1) * x[2];
        x = {std::uint32_t(p1 >> 32) ^ x[1] ^ k[0], std::uint32_t(p1),
             std::uint32_t(p0 >> 32) ^ x[3] ^ k[1], std::uint32_t(p0)};
        k[0] += W0;
        k[1] += W1;
    }
    return x;
}

// One stream per (seed, stream index); sample i of an experiment owns stream i, so the
// draw sequence does not depend on how samples are scheduled across workers.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream)
        : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)}, stream_(stream) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    // uniform in [0,1) with 53 random bits
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * next_double(); }

private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;

    void refill() {
        buf_ = philox4x32({std::uint32_t(block_), std::uint32_t(block_ >> 32),
                           std::uint32_t(stream_), std::uint32_t(stream_ >> 32)},
                          key_);
        ++block_;
        pos_ = 0;
    }
};

}
