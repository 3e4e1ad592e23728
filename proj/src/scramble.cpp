#include "tiadc/scramble.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace tiadc {

namespace {

// Generic route through the same moment system the closed form solves:
// rows are {normalization, first moment of (alpha + r), second moment}.
Eigen::Vector3d solve_generic(double alpha, double g_squared) {
    Eigen::Matrix3d m;
    m << 1.0, 1.0, 1.0,                                                       //
        (1.0 - alpha), -alpha, -(1.0 + alpha),                                //
        (1.0 - alpha) * (1.0 - alpha), alpha * alpha, (1.0 + alpha) * (1.0 + alpha);
    const Eigen::Vector3d rhs(1.0, 0.0, g_squared);
    return m.partialPivLu().solve(rhs);
}

}  // namespace

ScrambleProbabilities solve_probabilities(double alpha, double g_squared) {
    if (!(std::abs(alpha) < 1.0)) throw ConfigError("scramble solve requires |alpha| < 1");
    if (!(g_squared > 0.0)) throw ConfigError("scramble solve requires g^2 > 0");

    const double s = g_squared + alpha * alpha;
    ScrambleProbabilities p;
    p.alpha = alpha;
    p.g_squared = g_squared;
    p.p_minus1 = 0.5 * (s + alpha);
    p.p_plus1 = 0.5 * (s - alpha);
    p.p_zero = 1.0 - s;

    const double lo = 0.0, hi = 1.0;
    if (p.p_minus1 < lo || p.p_minus1 > hi || p.p_zero < lo || p.p_zero > hi ||
        p.p_plus1 < lo || p.p_plus1 > hi) {
        std::ostringstream msg;
        msg << "infeasible scramble probabilities for alpha=" << alpha << ", g^2=" << g_squared
            << " (p=" << p.p_minus1 << ", " << p.p_zero << ", " << p.p_plus1
            << "); need g^2 + alpha^2 in [|alpha|, 1]";
        throw InfeasibleError(msg.str());
    }

    const Eigen::Vector3d generic = solve_generic(alpha, g_squared);
    const double mismatch = std::max({std::abs(generic[0] - p.p_minus1),
                                      std::abs(generic[1] - p.p_zero),
                                      std::abs(generic[2] - p.p_plus1)});
    if (mismatch > 1e-10)
        throw std::logic_error("scramble closed form disagrees with generic 3x3 solve");

    return p;
}

std::pair<double, double> feasible_g_range(double alpha) {
    if (!(std::abs(alpha) < 1.0)) throw ConfigError("feasible_g_range requires |alpha| < 1");
    const double a2 = alpha * alpha;
    return {std::max(0.0, std::abs(alpha) - a2), 1.0 - a2};
}

int edge_from_unit(const ScrambleProbabilities& probs, double u) {
    if (u < probs.p_minus1) return -1;
    if (u < probs.p_minus1 + probs.p_zero) return 0;
    return +1;
}

int draw_edge(const ScrambleProbabilities& probs, DitherSource& dither) {
    return edge_from_unit(probs, dither.next_unit());
}

std::vector<int> generate_scramble_sequence(const ChannelTiming& ch, double g_squared,
                                            std::size_t count, std::uint64_t seed,
                                            int dither_bits) {
    const ScrambleProbabilities probs = solve_probabilities(ch.alpha, g_squared);
    DitherSource dither(dither_bits, seed, static_cast<std::uint64_t>(ch.index));
    std::vector<int> seq(count);
    for (std::size_t n = 0; n < count; ++n) seq[n] = draw_edge(probs, dither);
    return seq;
}

}  // namespace tiadc
