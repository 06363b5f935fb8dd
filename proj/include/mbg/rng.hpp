#pragma once

#include <cstdint>
#include <string>

namespace mbg {

// Every random artifact in this project is derived from a 64-bit master seed
// plus a stream index, so any single trial can be reproduced in isolation and
// results are bit-identical across platforms. Generator: xoshiro256** seeded
// via splitmix64. Neither depends on the standard library's (unspecified)
// distributions.

inline constexpr const char* kRngName = "xoshiro256** / splitmix64 streams";

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    Rng() : Rng(0, 0) {}

    Rng(std::uint64_t master, std::uint64_t stream) {
        std::uint64_t sm = master ^ splitmix_const(stream);
        for (auto& w : s_) w = splitmix64(sm);
        if (s_[0] == 0 && s_[1] == 0 && s_[2] == 0 && s_[3] == 0) s_[0] = 1;
    }

    std::uint64_t next() {
        std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Unbiased uniform draw from [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        while (true) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform in [0,1) with 53 random mantissa bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t splitmix_const(std::uint64_t stream) {
        // Mix the stream index so that streams 0,1,2,... are decorrelated.
        std::uint64_t st = stream * 0xD2B74407B1CE6E93ULL + 0x8BB84B93962EACC9ULL;
        return splitmix64(st);
    }

    std::uint64_t s_[4];
};

// (master, stream) pair naming one reproducible random stream.
struct Seed {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;

    Rng rng() const { return Rng(master, stream); }
    Seed with_stream(std::uint64_t s) const { return Seed{master, s}; }
};

} // namespace mbg
