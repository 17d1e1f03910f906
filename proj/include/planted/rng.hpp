#pragma once

#include <cstdint>
#include <limits>

namespace planted {

// SplitMix64 finalizer (Steele, Lea, Flood 2014). Full 64-bit avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based generator: output(i) = mix64(key + i*GAMMA) where
// key = mix64(seed) ^ mix64(stream ^ GAMMA).  This is SplitMix64 run in
// counter mode, so draw i is a pure function of (seed, stream, i) and any
// stream position can be addressed directly.  Identical in any language
// that reproduces mix64.
class CounterRng {
public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix64(seed) ^ mix64(stream ^ kGamma)), counter_(0) {}

    std::uint64_t state_key() const { return key_; }

    std::uint64_t at(std::uint64_t counter) const {
        return mix64(key_ + counter * kGamma);
    }

    std::uint64_t next() { return at(counter_++); }

    // Uniform double in [0,1), 53 random bits.
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound) by rejection; exact, no modulo bias.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit =
            std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % bound);
        for (;;) {
            std::uint64_t x = next();
            if (x < limit) return x % bound;
        }
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

// Stream ids derived from structured coordinates (trial index, hypothesis
// tag, ...) so parallel trials never share a stream.
inline std::uint64_t derive_stream(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    return mix64(a + 0x632BE59BD9B4E019ULL * b + 0x2545F4914F6CDD1DULL * c);
}

}  // namespace planted
