// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace mfnerf {

/// Counter-based deterministic generator. A draw is a pure function of
/// (seed, counter), so streams are reproducible bit-for-bit across
/// platforms and the full generator state is two integers, which makes
/// checkpoint round-trips exact.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0)
        : seed_(seed), counter_(counter) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Stateless draw: the value of stream `seed` at position `counter`.
    static std::uint64_t at(std::uint64_t seed, std::uint64_t counter) {
        return mix(seed + (counter + 1) * 0x9E3779B97F4A7C15ull);
    }

    std::uint64_t next_u64() { return at(seed_, counter_++); }

    /// Uniform in [0, 1) with 24 bits of mantissa entropy.
    float next_float() {
        return static_cast<float>(next_u64() >> 40) * 0x1.0p-24f;
    }

    /// Uniform in [0, 1) with 53 bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). n must be nonzero.
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }
    void set_counter(std::uint64_t c) { counter_ = c; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

}  // namespace mfnerf
