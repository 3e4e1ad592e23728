#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "tiadc/ddsm.hpp"
#include "tiadc/scramble.hpp"
#include "tiadc/signal.hpp"
#include "tiadc/subadc.hpp"
#include "tiadc/timing.hpp"

namespace tiadc {

/// How each channel picks its edge sequence r[n].
enum class Conditioning { None, Scramble, Shape };

/// Full description of one interleaved capture.
struct SimulationSpec {
    InterleaveClock clock;
    std::vector<ChannelTiming> channels;
    TestSignal signal;
    SubAdcSpec subadc;

    Conditioning conditioning = Conditioning::None;
    double g_squared = 0.0;  // scramble target second moment
    DdsmSpec ddsm;           // shaping modulator parameters
    int scramble_dither_bits = 24;

    std::int64_t n_total = 0;
    std::uint64_t seed = 0;

    /// Throws ConfigError for structural violations (Nyquist, channel list)
    /// and InfeasibleError when conditioning cannot be realized on some
    /// channel (names the channel and the violated bound).
    void validate() const;
};

/// Round-robin recombined capture: y[m] = channel_y[m mod L][m div L].
struct InterleavedCapture {
    Eigen::ArrayXd y;
    std::vector<Eigen::ArrayXd> channel_y;
    std::vector<Eigen::ArrayXd> edge_sequences;  // r values actually used
    std::int64_t saturation_count = 0;
    SimulationSpec spec;  // echo, with the seed that produced the capture
};

/// Run one capture: per channel, draw r[n] from the configured conditioner
/// (always 0 for Conditioning::None), evaluate the analytic signal at the
/// conditioned instants, convert through the channel's own sub-ADC, then
/// recombine round-robin. Bit-deterministic for a fixed (spec, seed).
InterleavedCapture simulate(const SimulationSpec& spec);

/// Partial Taylor sum of x(t_ideal + offset) around t_ideal, order 1..3.
double taylor_sample(const TestSignal& signal, double t_ideal, double offset, int order);

/// Elementwise difference of two captures of equal length.
Eigen::ArrayXd error_sequence(const InterleavedCapture& capture,
                              const InterleavedCapture& reference);

/// Empirical mean and second moment of the conditioned timing error
/// e_i[n] = tau_i + r_i[n]*delta for one channel of a capture.
struct ErrorMoments {
    double mean = 0.0;
    double second_moment = 0.0;
};
ErrorMoments conditioned_error_moments(const InterleavedCapture& capture, int channel);

}  // namespace tiadc
