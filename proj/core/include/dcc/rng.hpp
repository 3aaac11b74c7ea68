#pragma once

#include <cstdint>

namespace dcc {

// Counter-based generator built on the SplitMix64 finalizer: the k-th output is
// mix(key + k*GAMMA), so streams are pure functions of (seed, stream, counter)
// and reproduce bit-exactly on every platform. Stream s of a Monte Carlo run
// uses CounterRng(seed, s); trials never share state.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(seed ^ mix(stream + GAMMA))), ctr_(0) {}

    std::uint64_t next() { return mix(key_ + (++ctr_) * GAMMA); }

    /// Uniform integer in [0, bound) by rejection; bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
        std::uint64_t x = next();
        while (x > limit) x = next();
        return x % bound;
    }

private:
    static constexpr std::uint64_t GAMMA = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t ctr_;
};

} // namespace dcc
