#include "tiadc/analysis.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace tiadc {

namespace {

constexpr double kDbFloor = -400.0;

double to_db(double power) {
    if (!(power > 0.0)) return kDbFloor;
    return std::max(kDbFloor, 10.0 * std::log10(power));
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

std::string window_name(Window w) {
    return w == Window::Rectangular ? "rectangular" : "hann";
}

int SpectrumReport::bin_of(double cycles_per_sample) const {
    const int bin = static_cast<int>(std::lround(cycles_per_sample * nfft));
    if (bin < 0 || bin > nfft / 2) throw ConfigError("frequency outside [0, 0.5] cycles/sample");
    return bin;
}

SpectrumReport psd(const Eigen::Ref<const Eigen::ArrayXd>& y, int nfft, Window window) {
    if (!power_of_two(nfft)) throw ConfigError("psd nfft must be a power of two");
    if (y.size() < nfft) throw ConfigError("psd needs at least nfft samples");

    Eigen::ArrayXd w(nfft);
    if (window == Window::Rectangular) {
        w.setOnes();
    } else {
        for (int k = 0; k < nfft; ++k)
            w[k] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * k / nfft);
    }
    const double coherent_gain = w.sum();          // sum of window samples
    const double noise_gain = w.square().sum();    // sum of squared samples
    const int half = nfft / 2;
    const int hop = nfft / 2;  // 50% overlap
    const int segments = 1 + static_cast<int>((y.size() - nfft) / hop);

    Eigen::FFT<double> fft;
    Eigen::ArrayXd accum = Eigen::ArrayXd::Zero(half + 1);
    double weighted_ms = 0.0;
    std::vector<double> buf(nfft);
    std::vector<std::complex<double>> spec(nfft);
    for (int s = 0; s < segments; ++s) {
        const Eigen::Index off = static_cast<Eigen::Index>(s) * hop;
        for (int k = 0; k < nfft; ++k) buf[k] = w[k] * y[off + k];
        fft.fwd(spec, buf);
        for (int k = 0; k <= half; ++k) {
            const double two_sided = std::norm(spec[k]) / (coherent_gain * coherent_gain);
            accum[k] += (k == 0 || k == half) ? two_sided : 2.0 * two_sided;
        }
        for (int k = 0; k < nfft; ++k) weighted_ms += w[k] * w[k] * y[off + k] * y[off + k];
    }
    accum /= segments;
    weighted_ms /= noise_gain * segments;

    SpectrumReport report;
    report.freq = Eigen::ArrayXd::LinSpaced(half + 1, 0.0, 0.5);
    report.bin_power = accum;
    report.psd_db = accum.unaryExpr([](double p) { return to_db(p); });
    report.window = window;
    report.nfft = nfft;
    report.segments = segments;
    report.enbw = nfft * noise_gain / (coherent_gain * coherent_gain);
    report.windowed_mean_square = weighted_ms;
    return report;
}

SfdrMeasurement measure_sfdr(const SpectrumReport& report, int carrier_bin, int exclusion_bins,
                             int band_lo_bin, int band_hi_bin) {
    const int half = report.nfft / 2;
    if (carrier_bin < 0 || carrier_bin > half) throw ConfigError("carrier bin out of range");
    if (band_lo_bin > band_hi_bin || band_lo_bin < 0 || band_hi_bin > half)
        throw ConfigError("empty or invalid SFDR search band");

    // The carrier may sit outside a narrowed spur-search band; its power is
    // still the SFDR reference.
    const double carrier_power = report.bin_power[carrier_bin];
    SfdrMeasurement m;
    double worst = -1.0;
    for (int k = band_lo_bin; k <= band_hi_bin; ++k) {
        if (std::abs(k - carrier_bin) <= exclusion_bins) continue;
        if (report.bin_power[k] > worst) {
            worst = report.bin_power[k];
            m.worst_bin = k;
        }
    }
    if (m.worst_bin < 0) throw ConfigError("SFDR search band contains no bins outside the carrier exclusion");
    m.worst_power_db = to_db(worst);
    m.sfdr_db = to_db(carrier_power) - m.worst_power_db;
    return m;
}

double predicted_sfdr(const std::vector<ChannelMoment>& channels, double delta, double omega0) {
    if (channels.empty()) throw ConfigError("predicted_sfdr needs at least one channel");
    double sum = 0.0;
    for (const ChannelMoment& ch : channels) {
        const double residual = ch.second_moment * delta * delta - ch.tau * ch.tau;
        sum += residual * residual;
    }
    if (sum == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(4.0 / (std::pow(omega0, 4) * sum));
}

ResidualTonePrediction predicted_residual_tone(const std::vector<ChannelMoment>& channels,
                                               double delta, double amplitude, double omega0) {
    const int l = static_cast<int>(channels.size());
    if (l == 0) throw ConfigError("predicted_residual_tone needs at least one channel");

    ResidualTonePrediction pred;
    pred.coefficients.resize(l);
    for (int i = 0; i < l; ++i) {
        const ChannelMoment& ch = channels[i];
        pred.coefficients[i] =
            0.5 * (ch.tau * ch.tau - ch.second_moment * delta * delta) * amplitude * omega0 * omega0;
    }

    pred.image_amplitude.resize(l);
    for (int k = 0; k < l; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (int i = 0; i < l; ++i) {
            const double ang = -2.0 * std::numbers::pi * k * i / l;
            acc += pred.coefficients[i] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        pred.image_amplitude[k] = std::abs(acc) / l;
    }

    // Each interleave harmonic k != 0 puts sidebands of amplitude |C_k| at
    // k/L +/- f0; per-sideband power relative to the carrier A^2/2.
    pred.image_power_dbc.resize(l > 1 ? l - 1 : 0);
    for (int k = 1; k < l; ++k) {
        const double rel = (pred.image_amplitude[k] * pred.image_amplitude[k] / 2.0) /
                           (amplitude * amplitude / 2.0);
        pred.image_power_dbc[k - 1] = to_db(rel);
    }
    return pred;
}

double predicted_image_spur_dbc(const std::vector<double>& taus, double omega0, int harmonic) {
    const int l = static_cast<int>(taus.size());
    if (l == 0) throw ConfigError("predicted_image_spur_dbc needs at least one channel");
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < l; ++i) {
        const double ang = -2.0 * std::numbers::pi * harmonic * i / l;
        acc += taus[i] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    const double t_k = std::abs(acc) / l;
    return to_db(omega0 * omega0 * t_k * t_k);
}

double predicted_scramble_floor_bin_power(double g_squared, double delta, double amplitude,
                                          double omega0, int nfft) {
    // Total first-order error power e * dx/dt, white across the band.
    const double total = g_squared * delta * delta * amplitude * amplitude * omega0 * omega0 / 2.0;
    return total * 2.0 / nfft;  // one-sided per-bin share
}

double fit_psd_slope_db_per_decade(const SpectrumReport& report, double f_lo, double f_hi) {
    // Average bin powers in log-spaced groups before fitting: line spectra
    // (periodic sequences) leave most bins empty, and a per-bin dB fit
    // would be dominated by those holes instead of the power envelope.
    const int groups_per_decade = 16;
    const double decades = std::log10(f_hi / f_lo);
    const int groups = std::max(8, static_cast<int>(std::ceil(groups_per_decade * decades)));

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (int g = 0; g < groups; ++g) {
        const double glo = f_lo * std::pow(10.0, decades * g / groups);
        const double ghi = f_lo * std::pow(10.0, decades * (g + 1) / groups);
        double acc = 0.0, fsum = 0.0;
        int count = 0;
        for (Eigen::Index k = 1; k < report.freq.size(); ++k) {
            const double f = report.freq[k];
            if (f < glo || f >= ghi) continue;
            acc += report.bin_power[k];
            fsum += f;
            ++count;
        }
        if (count == 0 || !(acc > 0.0)) continue;
        const double x = std::log10(fsum / count);
        const double y = 10.0 * std::log10(acc / count);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 6) throw ConfigError("fit_psd_slope: too few populated groups in the requested band");
    const double denom = n * sxx - sx * sx;
    return (n * sxy - sx * sy) / denom;
}

double mean_band_power(const SpectrumReport& report, int lo_bin, int hi_bin,
                       const std::vector<int>& exclude, int exclude_radius) {
    double acc = 0.0;
    int count = 0;
    for (int k = lo_bin; k <= hi_bin; ++k) {
        bool skip = false;
        for (int e : exclude)
            if (std::abs(k - e) <= exclude_radius) skip = true;
        if (skip) continue;
        acc += report.bin_power[k];
        ++count;
    }
    if (count == 0) throw ConfigError("mean_band_power: no bins left after exclusions");
    return acc / count;
}

}  // namespace tiadc
