#include "tiadc/engine.hpp"

#include <cmath>
#include <sstream>

namespace tiadc {

namespace {

// Shaping levels double as edge multiples of delta, so they must be whole
// numbers (the hardware jumps between discrete edges).
int edge_span_for(const SimulationSpec& spec) {
    switch (spec.conditioning) {
        case Conditioning::None:
            return 0;
        case Conditioning::Scramble:
            return 1;
        case Conditioning::Shape: {
            int span = 0;
            for (double level : spec.ddsm.output_levels()) {
                if (std::abs(level - std::round(level)) > 1e-9)
                    throw ConfigError("ddsm output levels must be integer edge multiples");
                span = std::max(span, static_cast<int>(std::abs(std::round(level))));
            }
            return span;
        }
    }
    throw ConfigError("unknown conditioning kind");
}

}  // namespace

void SimulationSpec::validate() const {
    clock.validate();
    signal.validate();
    subadc.validate();
    if (static_cast<int>(channels.size()) != clock.channels)
        throw ConfigError("channel list length must equal the interleave factor L");
    for (int i = 0; i < clock.channels; ++i)
        if (channels[i].index != i)
            throw ConfigError("channel timings must be listed in channel order");
    if (n_total < clock.channels)
        throw ConfigError("capture length must cover at least one interleave frame (N >= L)");

    const double fs = 1.0 / clock.ts;
    if (!(fs > 2.0 * signal.bandwidth_hz()))
        throw ConfigError("Nyquist violation: F_S must exceed twice the signal bandwidth");

    switch (conditioning) {
        case Conditioning::None:
            break;
        case Conditioning::Scramble:
            for (const ChannelTiming& ch : channels) {
                try {
                    solve_probabilities(ch.alpha, g_squared);
                } catch (const InfeasibleError& e) {
                    std::ostringstream msg;
                    msg << "channel " << ch.index << ": " << e.what();
                    throw InfeasibleError(msg.str());
                }
            }
            break;
        case Conditioning::Shape:
            ddsm.validate();
            edge_span_for(*this);
            for (const ChannelTiming& ch : channels) {
                if (!check_no_overload(-ch.alpha, ddsm)) {
                    std::ostringstream msg;
                    msg << "channel " << ch.index << ": ddsm input " << -ch.alpha
                        << " violates the no-overload bound +/-" << ddsm.no_overload_bound();
                    throw InfeasibleError(msg.str());
                }
            }
            break;
    }
}

InterleavedCapture simulate(const SimulationSpec& spec) {
    spec.validate();

    const int l = spec.clock.channels;
    const int span = edge_span_for(spec);

    InterleavedCapture capture;
    capture.spec = spec;
    capture.y.resize(spec.n_total);
    capture.channel_y.resize(l);
    capture.edge_sequences.resize(l);

    for (int i = 0; i < l; ++i) {
        const ChannelTiming& ch = spec.channels[i];
        const std::int64_t count = (spec.n_total - i + l - 1) / l;  // >= 1 since N >= L

        Eigen::ArrayXd edges = Eigen::ArrayXd::Zero(count);
        switch (spec.conditioning) {
            case Conditioning::None:
                break;
            case Conditioning::Scramble: {
                const std::vector<int> seq = generate_scramble_sequence(
                    ch, spec.g_squared, static_cast<std::size_t>(count), spec.seed,
                    spec.scramble_dither_bits);
                for (std::int64_t n = 0; n < count; ++n) edges[n] = seq[n];
                break;
            }
            case Conditioning::Shape: {
                const std::vector<double> seq = generate_shaping_sequence(
                    ch, spec.ddsm, static_cast<std::size_t>(count), spec.seed);
                for (std::int64_t n = 0; n < count; ++n) edges[n] = seq[n];
                break;
            }
        }

        Eigen::ArrayXd samples(count);
        for (std::int64_t n = 0; n < count; ++n) {
            const int edge = static_cast<int>(std::llround(edges[n]));
            const double t = actual_instant(ch, spec.clock, n, edge, span);
            samples[n] = eval(spec.signal, t);
        }

        QuantizedStream quantized = quantize_stream(samples, spec.subadc);
        capture.saturation_count += quantized.saturation_count;
        capture.channel_y[i] = std::move(quantized.codes);
        capture.edge_sequences[i] = std::move(edges);
    }

    for (std::int64_t m = 0; m < spec.n_total; ++m)
        capture.y[m] = capture.channel_y[m % l][m / l];
    return capture;
}

double taylor_sample(const TestSignal& signal, double t_ideal, double offset, int order) {
    if (order < 1 || order > 3) throw ConfigError("taylor_sample supports orders 1..3");
    double sum = eval(signal, t_ideal);
    double power = 1.0, factorial = 1.0;
    for (int k = 1; k <= order; ++k) {
        power *= offset;
        factorial *= k;
        sum += power / factorial * eval_derivative(signal, t_ideal, k);
    }
    return sum;
}

Eigen::ArrayXd error_sequence(const InterleavedCapture& capture,
                              const InterleavedCapture& reference) {
    if (capture.y.size() != reference.y.size())
        throw ConfigError("error_sequence: capture lengths differ");
    return capture.y - reference.y;
}

ErrorMoments conditioned_error_moments(const InterleavedCapture& capture, int channel) {
    const auto& spec = capture.spec;
    if (channel < 0 || channel >= spec.clock.channels) throw ConfigError("channel index out of range");
    const ChannelTiming& ch = spec.channels[channel];
    const Eigen::ArrayXd e = ch.tau + capture.edge_sequences[channel] * ch.delta;
    ErrorMoments m;
    m.mean = e.mean();
    m.second_moment = e.square().mean();
    return m;
}

}  // namespace tiadc
