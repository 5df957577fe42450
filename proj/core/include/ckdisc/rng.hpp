#pragma once

#include <cstdint>

namespace ckdisc {

// Deterministic 64-bit generator (splitmix64). The full recurrence, so that
// streams can be reproduced in any language:
//
//   state += 0x9e3779b97f4a7c15
//   z = state
//   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//   return z ^ (z >> 31)
//
// Satisfies std::uniform_random_bit_generator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // ±1 with equal probability, from the top bit.
    int sign() { return (operator()() >> 63) ? -1 : +1; }

    // Uniform in [0, 1), 53 mantissa bits.
    double uniform() { return static_cast<double>(operator()() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Multiply-shift; bias is negligible for the n used here (n << 2^64).
        unsigned __int128 m = static_cast<unsigned __int128>(operator()()) * n;
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::uint64_t state_;
};

} // namespace ckdisc
