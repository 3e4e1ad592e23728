#pragma once

#include <cstdint>

#include "tiadc/errors.hpp"

namespace tiadc {

/// SplitMix64 finalizer. Statistically strong enough for dither generation
/// and, used in counter mode, gives random access by index.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Counter-based uniform dither source with per-channel substreams.
///
/// Draw n of stream s is mix64(base(seed, s) + n): no sequential state
/// beyond the counter, so distinct streams can be generated concurrently
/// and a fixed (seed, stream) pair always reproduces the same sequence.
struct DitherSource {
    int bits = 24;           // K, width of the digital dither word
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::uint64_t counter = 0;

    DitherSource() = default;
    DitherSource(int bits_, std::uint64_t seed_, std::uint64_t stream_)
        : bits(bits_), seed(seed_), stream(stream_) {
        if (bits < 8 || bits > 63) throw ConfigError("dither bit width must be in [8, 63]");
        base_ = mix64(seed_ ^ mix64(stream_ ^ 0xD17Eu));
    }

    /// Raw K-bit word, uniform on {0, ..., 2^K - 1}.
    std::uint64_t next_word() {
        const std::uint64_t v = mix64(base_ + counter);
        ++counter;
        return v >> (64 - bits);
    }

    /// Uniform on [0, 1) with K-bit granularity (word / 2^K).
    double next_unit() {
        return static_cast<double>(next_word()) /
               static_cast<double>(std::uint64_t{1} << bits);
    }

private:
    std::uint64_t base_ = 0;
};

/// Bernoulli(0.5) bit source for LSB dithering, seeded per channel.
struct LsbDither {
    LsbDither() = default;
    LsbDither(std::uint64_t seed, std::uint64_t stream) : src_(8, seed, stream ^ 0x15BDull) {}

    int next_bit() { return static_cast<int>(src_.next_word() & 1u); }

private:
    DitherSource src_;
};

}  // namespace tiadc
