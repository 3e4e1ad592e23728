#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "tiadc/errors.hpp"

namespace tiadc {

/// Round-robin interleave clock: L channels, overall sampling period Ts.
/// Channel i owns global output indices m with m mod L == i, so each
/// branch runs at rate 1/(L*Ts).
struct InterleaveClock {
    int channels = 1;  // L
    double ts = 1.0;   // seconds

    void validate() const {
        if (channels < 1) throw ConfigError("interleave clock requires L >= 1 channels");
        if (!(ts > 0.0)) throw ConfigError("sampling period Ts must be > 0");
    }
};

/// Static per-channel timing: skew tau relative to the reference channel
/// and the edge-step granularity delta. alpha = tau/delta is cached on
/// construction; |alpha| < 1 is enforced (testable stand-in for the
/// delta >> tau assumption).
struct ChannelTiming {
    int index = 0;
    double tau = 0.0;    // seconds
    double delta = 1.0;  // seconds, > 0
    double alpha = 0.0;  // tau / delta

    ChannelTiming() = default;
    ChannelTiming(int index_, double tau_, double delta_) : index(index_), tau(tau_), delta(delta_) {
        if (!(delta > 0.0)) throw ConfigError("edge step delta must be > 0");
        alpha = tau / delta;
        if (!(std::abs(alpha) < 1.0))
            throw ConfigError("channel " + std::to_string(index) +
                              ": |tau/delta| must be < 1 (got alpha=" + std::to_string(alpha) + ")");
    }
};

/// Ideal sampling instant of channel i's n-th sample: (n*L + i)*Ts.
inline double ideal_instant(const InterleaveClock& clock, int channel, std::int64_t n) {
    if (channel < 0 || channel >= clock.channels)
        throw ConfigError("channel index out of range");
    if (n < 0) throw ConfigError("sample index must be >= 0");
    return static_cast<double>(n * clock.channels + channel) * clock.ts;
}

/// Conditioned sampling instant: ideal + tau + r*delta, where r is the
/// selected edge offset. |r| must lie within the configured edge span.
inline double actual_instant(const ChannelTiming& ch, const InterleaveClock& clock, std::int64_t n,
                             int edge, int edge_span) {
    if (edge < -edge_span || edge > edge_span)
        throw ConfigError("edge offset " + std::to_string(edge) + " outside configured edge set [-" +
                          std::to_string(edge_span) + ", " + std::to_string(edge_span) + "]");
    return ideal_instant(clock, ch.index, n) + ch.tau + static_cast<double>(edge) * ch.delta;
}

}  // namespace tiadc
