#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "tiadc/errors.hpp"

namespace tiadc {

enum class Window { Rectangular, Hann };

std::string window_name(Window w);

/// One spectral measurement. bin_power is one-sided and coherent-gain
/// normalized, so a tone centered on bin k contributes its full power
/// A^2/2 to bin_power[k]. enbw is the window's equivalent noise bandwidth
/// in bins; sum(bin_power)/enbw equals the w^2-weighted time-domain mean
/// square exactly (plain mean square for the rectangular window).
struct SpectrumReport {
    Eigen::ArrayXd freq;       // cycles/sample, nfft/2 + 1 bins
    Eigen::ArrayXd bin_power;  // linear power, full-scale relative
    Eigen::ArrayXd psd_db;     // 10*log10(bin_power), floored at -400 dB

    Window window = Window::Rectangular;
    int nfft = 0;
    int segments = 0;
    double enbw = 1.0;
    double windowed_mean_square = 0.0;

    int carrier_bin = -1;
    double sfdr_db = 0.0;
    double inband_noise_power = 0.0;

    struct Spur {
        int bin = 0;
        double power_db = 0.0;
    };
    std::vector<Spur> spurs;

    int bin_of(double cycles_per_sample) const;
};

/// Welch-averaged periodogram: segments of length nfft, 50% overlap.
/// nfft must be a power of two and len(y) >= nfft.
SpectrumReport psd(const Eigen::Ref<const Eigen::ArrayXd>& y, int nfft, Window window);

/// Carrier power over the largest bin in [band_lo_bin, band_hi_bin],
/// excluding carrier_bin +/- exclusion_bins. Also reports the worst bin.
struct SfdrMeasurement {
    double sfdr_db = 0.0;
    int worst_bin = -1;
    double worst_power_db = 0.0;
};
SfdrMeasurement measure_sfdr(const SpectrumReport& report, int carrier_bin, int exclusion_bins,
                             int band_lo_bin, int band_hi_bin);

/// Per-channel (tau, S) pair feeding the spur predictions; S = E(r^2).
struct ChannelMoment {
    double tau = 0.0;
    double second_moment = 0.0;  // S
};

/// Worst-case spur bound 10*log10(4 / (w0^4 * sum_i (S_i d^2 - tau_i^2)^2)).
/// Returns +infinity when the sum is exactly zero.
double predicted_sfdr(const std::vector<ChannelMoment>& channels, double delta, double omega0);

/// Residual second-order tone structure: per-channel coefficients
/// c_i = (tau_i^2 - S_i d^2)/2 * A * w0^2 modulating the carrier, and the
/// image-spur amplitude each interleave harmonic k contributes (the DFT of
/// the channel-periodic coefficient sequence). Channel-independent
/// coefficients collapse onto the carrier and raise no image spur.
struct ResidualTonePrediction {
    std::vector<double> coefficients;       // per channel
    std::vector<double> image_amplitude;    // |DFT_k(c)|, k = 0..L-1
    std::vector<double> image_power_dbc;    // per-sideband power vs carrier, k = 1..L-1
};
ResidualTonePrediction predicted_residual_tone(const std::vector<ChannelMoment>& channels,
                                               double delta, double amplitude, double omega0);

/// First-order image spur of an uncorrected capture: the channel-periodic
/// tau_i gain on dx/dt puts sidebands at k/L +/- f0 with power
/// (w0*|DFT_k(tau)|)^2 relative to the carrier.
double predicted_image_spur_dbc(const std::vector<double>& taus, double omega0, int harmonic);

/// White-noise floor injected by scrambling: per-bin one-sided power of the
/// conditioned error g^2 d^2 passed through the derivative gain, for an
/// nfft-bin rectangular measurement.
double predicted_scramble_floor_bin_power(double g_squared, double delta, double amplitude,
                                          double omega0, int nfft);

/// Mean bin power over [lo_bin, hi_bin] skipping bins listed in `exclude`
/// (each +/- exclude_radius).
double mean_band_power(const SpectrumReport& report, int lo_bin, int hi_bin,
                       const std::vector<int>& exclude, int exclude_radius);

/// Least-squares slope of psd_db against log10(f) over bins with
/// f in [f_lo, f_hi] cycles/sample, in dB/decade. A (1 - z^-1)^P shaper
/// fits ~20*P dB/decade well below the sample rate.
double fit_psd_slope_db_per_decade(const SpectrumReport& report, double f_lo, double f_hi);

}  // namespace tiadc
