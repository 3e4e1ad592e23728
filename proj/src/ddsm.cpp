#include "tiadc/ddsm.hpp"

#include <cmath>
#include <sstream>

namespace tiadc {

namespace {

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * static_cast<double>(n - k + i) / static_cast<double>(i);
    return b;
}

double quantize_input(double input, const DdsmSpec& spec) {
    const double scale = static_cast<double>(std::uint64_t{1} << spec.input_bits);
    return std::round(input * scale) / scale;
}

}  // namespace

void DdsmSpec::validate() const {
    if (order < 1) throw ConfigError("ddsm order must be >= 1");
    if (levels < 2) throw ConfigError("ddsm must have >= 2 output levels");
    if (!(step > 0.0)) throw ConfigError("ddsm quantizer step must be > 0");
    if (input_bits < 1 || input_bits > 62) throw ConfigError("ddsm input bits must be in [1, 62]");
    if (order >= 31 || levels + 1 - (1 << order) <= 0)
        throw ConfigError("ddsm no-overload range is empty: need M + 1 - 2^P > 0");
}

double DdsmSpec::input_lsb() const { return 1.0 / static_cast<double>(std::uint64_t{1} << input_bits); }

double DdsmSpec::no_overload_bound() const {
    const double bound = (levels + 1 - (1 << order)) * step / 2.0;
    return dither_enabled ? bound - input_lsb() : bound;
}

double DdsmSpec::level(int k) const { return (2 * k + 1 - levels) * step / 2.0; }

std::vector<double> DdsmSpec::output_levels() const {
    std::vector<double> out(levels);
    for (int k = 0; k < levels; ++k) out[k] = level(k);
    return out;
}

DdsmState::DdsmState(const DdsmSpec& spec) : error_history(spec.order, 0.0) { spec.validate(); }

bool check_no_overload(double input, const DdsmSpec& spec) {
    return std::abs(input) <= spec.no_overload_bound();
}

double ddsm_step(DdsmState& state, double input, const DdsmSpec& spec, int dither_bit) {
    const int p = spec.order;
    // Quantizer input: K-bit input word, LSB dither, and the shaped history
    // of past quantization errors, so that v = u + (1 - z^-1)^P q.
    double w = quantize_input(input, spec) + (spec.dither_enabled ? dither_bit * spec.input_lsb() : 0.0);
    double sign = -1.0;
    for (int k = 1; k <= p; ++k) {
        w += sign * binomial(p, k) * state.error_history[k - 1];
        sign = -sign;
    }

    // Nearest output level, exact midpoints toward the higher level.
    int idx = static_cast<int>(std::floor(w / spec.step + 0.5 * (spec.levels - 1) + 0.5));
    if (idx < 0) idx = 0;
    if (idx >= spec.levels) idx = spec.levels - 1;
    const double r = spec.level(idx);

    const double q = r - w;
    for (int k = p - 1; k > 0; --k) state.error_history[k] = state.error_history[k - 1];
    state.error_history[0] = q;
    state.max_register_magnitude = std::max(state.max_register_magnitude, std::abs(q));
    return r;
}

std::vector<double> generate_shaping_sequence(const ChannelTiming& ch, const DdsmSpec& spec,
                                              std::size_t count, std::uint64_t seed) {
    spec.validate();
    const double input = quantize_input(-ch.alpha, spec);
    if (!check_no_overload(input, spec)) {
        std::ostringstream msg;
        msg << "channel " << ch.index << ": ddsm input " << input
            << " violates the no-overload bound +/-" << spec.no_overload_bound();
        throw InfeasibleError(msg.str());
    }
    DdsmState state(spec);
    LsbDither dither(seed, static_cast<std::uint64_t>(ch.index));
    std::vector<double> seq(count);
    for (std::size_t n = 0; n < count; ++n)
        seq[n] = ddsm_step(state, input, spec, spec.dither_enabled ? dither.next_bit() : 0);
    return seq;
}

double ddsm_noise_gain(int order) { return binomial(2 * order, order); }

double predicted_second_moment(const ChannelTiming& ch, const DdsmSpec& spec) {
    spec.validate();
    if (!check_no_overload(quantize_input(-ch.alpha, spec), spec)) {
        std::ostringstream msg;
        msg << "channel " << ch.index << ": ddsm input " << -ch.alpha
            << " violates the no-overload bound +/-" << spec.no_overload_bound();
        throw InfeasibleError(msg.str());
    }
    return spec.step * spec.step / 12.0 * ddsm_noise_gain(spec.order) + ch.alpha * ch.alpha;
}

}  // namespace tiadc
