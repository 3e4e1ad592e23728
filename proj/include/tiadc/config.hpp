#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tiadc/analysis.hpp"
#include "tiadc/engine.hpp"

namespace tiadc {

/// Spectral-measurement options carried by a run configuration.
struct AnalysisConfig {
    Window window = Window::Rectangular;
    int nfft = 65536;
    int carrier_exclusion_bins = 3;
    double sfdr_band_center = 0.25;      // cycles/sample; interleave null for L=4
    double sfdr_band_halfwidth = 0.004;  // cycles/sample
    double noise_window_halfwidth = 0.002;
};

/// Human-editable run configuration (JSON on disk). Times are seconds,
/// tone frequencies Hz; with the default ts = 1 the frequency axis is
/// cycles/sample. Defaults reproduce the reference four-scenario study.
struct RunConfig {
    int channels = 4;
    double ts = 1.0;
    std::vector<double> skews;  // seconds, one per channel (reference channel 0)
    double delta = 1.0 / 3.0;   // edge step, seconds

    TestSignal signal;

    SubAdcSpec subadc;

    bool g_squared_auto = true;  // pick smallest jointly feasible g^2 * 1.05
    double g_squared = 0.0;      // used when g_squared_auto is false
    int scramble_dither_bits = 24;

    DdsmSpec ddsm;

    std::int64_t n_total = 65536;
    std::uint64_t seed = 20270101;

    AnalysisConfig analysis;

    RunConfig();  // reference defaults
};

/// Parse/serialize round-trip is identity on every field.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);  // throws IoError / ConfigError
std::string serialize_config(const RunConfig& config);

/// FNV-1a over the canonical serialization; stable across platforms.
std::string config_hash(const RunConfig& config);

/// Structural validation beyond parsing (counts, signs, Nyquist via the
/// engine spec build). Throws ConfigError naming the failing invariant.
void validate_config(const RunConfig& config);

/// Effective scramble second moment: the configured value, or the smallest
/// value feasible for every channel scaled by 1.05 headroom (floored at
/// 0.01 when all skews vanish). Throws InfeasibleError when no g^2 fits.
double effective_g_squared(const RunConfig& config);

}  // namespace tiadc
