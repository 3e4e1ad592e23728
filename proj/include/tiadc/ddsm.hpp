#pragma once

#include <cstdint>
#include <vector>

#include "tiadc/rng.hpp"
#include "tiadc/timing.hpp"

namespace tiadc {

/// Digital delta-sigma modulator parameters. The modulator emits edge
/// offsets r[n] from the M-level alphabet {-(M-1), -(M-3), ..., (M-1)}*a/2
/// with long-run mean equal to its (K-bit) constant input and deviation
/// shaped by (1 - z^-1)^P.
struct DdsmSpec {
    int order = 2;               // P >= 1
    int levels = 4;              // M >= 2
    double step = 2.0;           // quantizer step a
    int input_bits = 16;         // K, fractional bits of the input word
    bool dither_enabled = true;  // LSB dithering of the input

    /// No-overload input bound (M + 1 - 2^P)*a/2, shrunk by one input LSB
    /// when dithering is enabled (the dither bit consumes that headroom).
    double no_overload_bound() const;

    /// Output level for index k in [0, M).
    double level(int k) const;
    std::vector<double> output_levels() const;

    /// One input LSB: 2^-K.
    double input_lsb() const;

    void validate() const;  // throws ConfigError
};

/// Error-feedback state: the last P quantization errors. Registers stay
/// bounded (|q| <= a/2) whenever every past input satisfied the
/// no-overload bound.
struct DdsmState {
    explicit DdsmState(const DdsmSpec& spec);

    std::vector<double> error_history;  // error_history[0] = q[n-1]
    double max_register_magnitude = 0.0;
};

/// True iff the (already K-bit) input respects the no-overload bound.
bool check_no_overload(double input, const DdsmSpec& spec);

/// One modulator update. The input is quantized to K fractional bits on
/// entry; the dither bit adds one input LSB at the quantizer input.
/// Quantizer ties round toward the higher level. Returns the emitted
/// output level. Overload at step level is not an error; it merely
/// degrades shaping (configuration-time checks catch it).
double ddsm_step(DdsmState& state, double input, const DdsmSpec& spec, int dither_bit);

/// Shaping sequence for one channel: constant input -alpha (K-bit
/// quantized) plus LSB dither, stepped N times. Deterministic given
/// (seed, channel index). Throws InfeasibleError when -alpha violates the
/// no-overload bound.
std::vector<double> generate_shaping_sequence(const ChannelTiming& ch, const DdsmSpec& spec,
                                              std::size_t count, std::uint64_t seed);

/// Analytic second moment E(r^2) = (a^2/12) f(P) + alpha^2 with
/// f(P) = C(2P, P), the noise power gain of a (1 - z^-1)^P shaper driven
/// by white quantizer error (f(1) = 2, f(2) = 6).
double predicted_second_moment(const ChannelTiming& ch, const DdsmSpec& spec);

/// f(P) = C(2P, P).
double ddsm_noise_gain(int order);

}  // namespace tiadc
