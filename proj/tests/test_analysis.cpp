#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "tiadc/analysis.hpp"
#include "tiadc/rng.hpp"
#include "tiadc/scramble.hpp"

using namespace tiadc;

namespace {

Eigen::ArrayXd coherent_tone(double amplitude, int bin, int n, double phase = 0.0) {
    Eigen::ArrayXd y(n);
    for (int k = 0; k < n; ++k)
        y[k] = amplitude * std::sin(2.0 * std::numbers::pi * bin * k / n + phase);
    return y;
}

SpectrumReport synthetic_report(const std::vector<std::pair<int, double>>& bins_db, int nfft) {
    SpectrumReport r;
    r.nfft = nfft;
    r.freq = Eigen::ArrayXd::LinSpaced(nfft / 2 + 1, 0.0, 0.5);
    r.bin_power = Eigen::ArrayXd::Constant(nfft / 2 + 1, 1e-40);
    for (auto [bin, db] : bins_db) r.bin_power[bin] = std::pow(10.0, db / 10.0);
    r.psd_db = r.bin_power.unaryExpr([](double p) { return 10.0 * std::log10(p); });
    return r;
}

}  // namespace

TEST_CASE("coherent tone lands in one bin at its full power") {
    const int n = 4096;
    const Eigen::ArrayXd y = coherent_tone(1.0, 129, n, 0.37);
    const SpectrumReport r = psd(y, n, Window::Rectangular);
    CHECK(r.psd_db[129] == doctest::Approx(-3.0103).epsilon(1e-4));  // A^2/2 for A=1
    // neighbours carry no leakage for an exactly coherent tone
    CHECK(r.psd_db[128] < -200);
    CHECK(r.psd_db[130] < -200);

    // Parseval: sum of bin powers equals the time-domain mean square (0.1%).
    CHECK(r.bin_power.sum() == doctest::Approx(y.square().mean()).epsilon(1e-3));
    CHECK(r.bin_power.sum() / r.enbw ==
          doctest::Approx(r.windowed_mean_square).epsilon(1e-12));
}

TEST_CASE("zero input gives a numerical-noise floor") {
    const Eigen::ArrayXd y = Eigen::ArrayXd::Zero(2048);
    const SpectrumReport r = psd(y, 2048, Window::Rectangular);
    CHECK((r.psd_db <= -300.0).all());
}

TEST_CASE("white uniform noise integrates to its variance") {
    const int n = 1 << 16;
    DitherSource d(32, 99, 1);
    Eigen::ArrayXd y(n);
    for (int k = 0; k < n; ++k) y[k] = 2.0 * d.next_unit() - 1.0;  // variance 1/3

    for (Window w : {Window::Rectangular, Window::Hann}) {
        const SpectrumReport r = psd(y, 4096, w);
        const double total = r.bin_power.sum() / r.enbw;
        CHECK(total == doctest::Approx(1.0 / 3.0).epsilon(0.01));
        // exact identity against the windowed mean square
        CHECK(total == doctest::Approx(r.windowed_mean_square).epsilon(1e-12));
    }
}

TEST_CASE("hann window recovers on-bin tone power through the peak bin") {
    const int n = 1 << 14;
    const Eigen::ArrayXd y = coherent_tone(0.7, 300, n);
    const SpectrumReport r = psd(y, 4096, Window::Hann);
    const int bin = 300 / (n / 4096);
    CHECK(r.psd_db[bin] == doctest::Approx(10.0 * std::log10(0.7 * 0.7 / 2.0)).epsilon(2e-3));
}

TEST_CASE("nfft must be a power of two") {
    const Eigen::ArrayXd y = Eigen::ArrayXd::Zero(1000);
    CHECK_THROWS_AS(psd(y, 1000, Window::Rectangular), ConfigError);
    CHECK_THROWS_AS(psd(y, 2048, Window::Rectangular), ConfigError);  // too few samples
}

TEST_CASE("SFDR measurement on crafted spectra") {
    // carrier 0 dB at bin 100, largest other bin -60 dB -> 60 dB
    const SpectrumReport r =
        synthetic_report({{100, 0.0}, {300, -60.0}, {500, -80.0}}, 2048);
    const SfdrMeasurement m = measure_sfdr(r, 100, 3, 0, 1024);
    CHECK(m.sfdr_db == doctest::Approx(60.0).epsilon(1e-12));
    CHECK(m.worst_bin == 300);

    // flat floor at -100 dB -> SFDR 100
    const SpectrumReport flat = synthetic_report({{100, 0.0}}, 2048);
    SpectrumReport flat2 = flat;
    flat2.bin_power = Eigen::ArrayXd::Constant(1025, 1e-10);
    flat2.bin_power[100] = 1.0;
    const SfdrMeasurement m2 = measure_sfdr(flat2, 100, 3, 0, 1024);
    CHECK(m2.sfdr_db == doctest::Approx(100.0).epsilon(1e-12));

    // band excluding everything but the carrier neighbourhood is an error
    CHECK_THROWS_AS(measure_sfdr(r, 100, 3, 99, 101), ConfigError);
}

TEST_CASE("SFDR is invariant under uniform scaling") {
    const int n = 8192;
    Eigen::ArrayXd y = coherent_tone(0.5, 200, n) + coherent_tone(0.5e-3, 700, n, 1.1);
    const SpectrumReport a = psd(y, n, Window::Rectangular);
    const SpectrumReport b = psd((y * 3.7).eval(), n, Window::Rectangular);
    const double sa = measure_sfdr(a, 200, 3, 0, n / 2).sfdr_db;
    const double sb = measure_sfdr(b, 200, 3, 0, n / 2).sfdr_db;
    CHECK(std::abs(sa - sb) < 1e-9);
    CHECK(sa == doctest::Approx(60.0).epsilon(1e-6));
}

TEST_CASE("worst-case SFDR bound (unit and reference cases)") {
    // single channel, w0 = 1, S*d^2 - tau^2 = 2 -> 10 log10(4/4) = 0 dB
    CHECK(predicted_sfdr({{0.0, 2.0}}, 1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-12));

    // all residuals zero -> +infinity sentinel
    CHECK(std::isinf(predicted_sfdr({{0.5, 0.25}}, 1.0, 1.0)));  // S d^2 == tau^2

    // reference shaped configuration, frozen from the closed-form evaluation
    const double delta = 1.0 / 3.0;
    const double omega0 = 2.0 * std::numbers::pi * 125.0 / 65536.0;
    std::vector<ChannelMoment> ch;
    for (double tau : {0.0, -0.15, 0.15, 0.15}) {
        const double alpha = tau / delta;
        ch.push_back({tau, 2.0 + alpha * alpha});
    }
    CHECK(predicted_sfdr(ch, delta, omega0) == doctest::Approx(89.9199).epsilon(1e-5));
}

TEST_CASE("SFDR bound decreases in each residual and in omega0") {
    const double delta = 0.4;
    for (double base : {0.1, 0.5, 2.0}) {
        for (double grow : {1.5, 3.0}) {
            std::vector<ChannelMoment> lo{{0.0, base}, {0.1, base}};
            std::vector<ChannelMoment> hi{{0.0, base * grow}, {0.1, base}};
            CHECK(predicted_sfdr(hi, delta, 0.3) < predicted_sfdr(lo, delta, 0.3));
        }
        std::vector<ChannelMoment> ch{{0.0, base}, {0.1, base}};
        double prev = predicted_sfdr(ch, delta, 0.05);
        for (double w : {0.1, 0.2, 0.4}) {
            const double cur = predicted_sfdr(ch, delta, w);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("residual tone prediction: cancellation cases") {
    // tau^2 == S d^2 on every channel -> all-zero coefficients
    std::vector<ChannelMoment> balanced;
    for (int i = 0; i < 4; ++i) balanced.push_back({0.2, 0.25});  // S d^2 = 0.04 = tau^2
    auto pred = predicted_residual_tone(balanced, 0.4, 0.5, 0.3);
    for (double c : pred.coefficients) CHECK(c == doctest::Approx(0.0).epsilon(1e-15));

    // equal coefficients across channels collapse onto the carrier: no
    // image spur at k != 0
    std::vector<ChannelMoment> equal;
    for (int i = 0; i < 4; ++i) equal.push_back({0.0, 1.7});
    pred = predicted_residual_tone(equal, 0.4, 0.5, 0.3);
    CHECK(pred.image_amplitude[0] > 0.0);
    for (int k = 1; k < 4; ++k) CHECK(pred.image_amplitude[k] < 1e-15);
}

TEST_CASE("residual-tone prediction matches a measured constructed capture") {
    // Channels with deliberately different conditioned second moments (per
    // channel g^2) raise a real second-order image spur; the prediction from
    // the empirical per-channel moments must match the measured spur power.
    // A fast tone keeps the w0^2-scaled spur clear of the white floor.
    const int l = 4;
    const double delta = 1.0 / 3.0;
    const double amplitude = 0.5;
    const double f0 = 401.0 / 8192.0;
    const double omega0 = 2.0 * std::numbers::pi * f0;
    const double alphas[4] = {0.0, 0.15, -0.15, 0.15};
    const double g2[4] = {0.13, 0.13, 0.60, 0.60};

    const int n = 1 << 19;
    std::vector<std::vector<int>> edges(l);
    std::vector<ChannelMoment> moments(l);
    for (int i = 0; i < l; ++i) {
        const ChannelTiming ch(i, alphas[i] * delta, delta);
        edges[i] = generate_scramble_sequence(ch, g2[i], n / l, 505, 24);
        double second = 0.0;
        for (int r : edges[i]) second += static_cast<double>(r) * r;
        moments[i] = {ch.tau, second / (n / l) };  // empirical S_i
    }

    Eigen::ArrayXd y(n);
    for (int m = 0; m < n; ++m) {
        const int i = m % l;
        const double e = alphas[i] * delta + edges[i][m / l] * delta;
        y[m] = amplitude * std::sin(omega0 * (m + e));
    }

    const SpectrumReport rep = psd(y, n, Window::Rectangular);
    const int carrier = 401 * 64;  // exact bin at N = 2^19
    const int image_lo = n / 4 - carrier, image_hi = n / 4 + carrier;

    const auto pred = predicted_residual_tone(moments, delta, amplitude, omega0);
    const double predicted_dbc = pred.image_power_dbc[0];  // k = 1, per sideband
    const double measured_dbc =
        10.0 * std::log10(0.5 * (rep.bin_power[image_lo] + rep.bin_power[image_hi]) /
                          rep.bin_power[carrier]);
    CHECK(std::abs(measured_dbc - predicted_dbc) <= 3.0);
}

TEST_CASE("slope fit recovers a synthetic 40 dB/decade ramp") {
    const int nfft = 1 << 16;
    SpectrumReport r;
    r.nfft = nfft;
    r.freq = Eigen::ArrayXd::LinSpaced(nfft / 2 + 1, 0.0, 0.5);
    r.bin_power.resize(nfft / 2 + 1);
    for (int k = 0; k <= nfft / 2; ++k)
        r.bin_power[k] = k == 0 ? 0.0 : std::pow(10.0, (40.0 * std::log10(r.freq[k]) - 7.0) / 10.0);
    r.psd_db = r.bin_power.unaryExpr(
        [](double p) { return p > 0.0 ? 10.0 * std::log10(p) : -400.0; });
    CHECK(fit_psd_slope_db_per_decade(r, 1e-4, 1e-2) == doctest::Approx(40.0).epsilon(2e-3));
}
