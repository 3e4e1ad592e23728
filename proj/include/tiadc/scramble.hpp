#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tiadc/rng.hpp"
#include "tiadc/timing.hpp"

namespace tiadc {

/// Occurrence probabilities for the edge offsets {-1, 0, +1}, chosen so
/// that the conditioned timing error tau + r*delta is zero-mean with a
/// channel-independent second moment g^2 * delta^2:
///   p(-1) + p(0) + p(+1) = 1
///   p(-1) - p(+1)        = alpha        (first moment of r is -alpha)
///   p(-1) + p(+1)        = g^2 + alpha^2 (second moment of r)
struct ScrambleProbabilities {
    double p_minus1 = 0.0;
    double p_zero = 1.0;
    double p_plus1 = 0.0;
    double g_squared = 0.0;
    double alpha = 0.0;
};

/// Solve the 3x3 moment system for the given normalized skew alpha and
/// target second moment g^2. The closed form
///   p(-1) = (g^2 + a^2 + a)/2, p(+1) = (g^2 + a^2 - a)/2, p(0) = 1 - g^2 - a^2
/// is cross-checked against a generic partial-pivot solve of the same
/// system; disagreement beyond 1e-10 is an internal error.
/// Throws InfeasibleError when any probability falls outside [0, 1].
ScrambleProbabilities solve_probabilities(double alpha, double g_squared);

/// Range of g^2 with valid probabilities for this alpha:
/// (max(0, |a| - a^2), 1 - a^2). Any g^2 strictly inside is feasible.
std::pair<double, double> feasible_g_range(double alpha);

/// Threshold a uniform draw u in [0,1) against the cumulative
/// probabilities {p(-1), p(-1)+p(0), 1}. Half-open intervals: a draw equal
/// to a threshold selects the upper region.
int edge_from_unit(const ScrambleProbabilities& probs, double u);

/// edge_from_unit applied to the next dither word.
int draw_edge(const ScrambleProbabilities& probs, DitherSource& dither);

/// N i.i.d. edge draws for one channel. Deterministic given (seed, stream);
/// the channel index is the substream, so channels are independent but
/// reproducible. dither_bits is the K of the digital dither word.
std::vector<int> generate_scramble_sequence(const ChannelTiming& ch, double g_squared,
                                            std::size_t count, std::uint64_t seed,
                                            int dither_bits = 24);

}  // namespace tiadc
