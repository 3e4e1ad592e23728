#include "tiadc/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "tiadc/format.hpp"

namespace tiadc {

using ordered_json = nlohmann::ordered_json;

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::Ideal: return "ideal";
        case Scenario::Uncorrected: return "uncorrected";
        case Scenario::Scramble: return "scramble";
        case Scenario::Shape: return "shape";
    }
    return "unknown";
}

std::optional<Scenario> scenario_from_name(const std::string& name) {
    if (name == "ideal") return Scenario::Ideal;
    if (name == "uncorrected") return Scenario::Uncorrected;
    if (name == "scramble") return Scenario::Scramble;
    if (name == "shape") return Scenario::Shape;
    return std::nullopt;
}

SimulationSpec build_simulation_spec(const RunConfig& config, Scenario scenario) {
    validate_config(config);

    SimulationSpec spec;
    spec.clock = {config.channels, config.ts};
    for (int i = 0; i < config.channels; ++i) {
        const double tau = scenario == Scenario::Ideal ? 0.0 : config.skews[i];
        spec.channels.emplace_back(i, tau, config.delta);
    }
    spec.signal = config.signal;
    spec.subadc = config.subadc;
    spec.n_total = config.n_total;
    spec.seed = config.seed;
    spec.scramble_dither_bits = config.scramble_dither_bits;
    spec.ddsm = config.ddsm;

    switch (scenario) {
        case Scenario::Ideal:
        case Scenario::Uncorrected:
            spec.conditioning = Conditioning::None;
            break;
        case Scenario::Scramble:
            spec.conditioning = Conditioning::Scramble;
            spec.g_squared = effective_g_squared(config);
            break;
        case Scenario::Shape:
            spec.conditioning = Conditioning::Shape;
            break;
    }
    return spec;
}

namespace {

double carrier_frequency_norm(const RunConfig& config) {
    // Largest-amplitude tone is the carrier.
    const Tone* carrier = &config.signal.tones.front();
    for (const Tone& t : config.signal.tones)
        if (t.amplitude > carrier->amplitude) carrier = &t;
    return carrier->omega / (2.0 * std::numbers::pi) * config.ts;
}

int clamp_bin(int bin, int half) { return std::clamp(bin, 0, half); }

/// Interleave-image bins |k/L +/- f0| folded into [0, 0.5], k = 1..L-1.
std::vector<int> image_bins(const RunConfig& config, const SpectrumReport& report) {
    const double f0 = carrier_frequency_norm(config);
    std::vector<int> bins;
    for (int k = 1; k < config.channels; ++k) {
        for (int sign : {-1, 1}) {
            double f = static_cast<double>(k) / config.channels + sign * f0;
            f = std::abs(f);
            if (f > 0.5) f = 1.0 - f;
            const int bin = static_cast<int>(std::lround(f * report.nfft));
            if (bin >= 0 && bin <= report.nfft / 2) bins.push_back(bin);
        }
    }
    std::sort(bins.begin(), bins.end());
    bins.erase(std::unique(bins.begin(), bins.end()), bins.end());
    return bins;
}

double predicted_sfdr_for(const RunConfig& config, Scenario scenario) {
    std::vector<double> taus(config.skews);
    const double omega0 = carrier_frequency_norm(config) * 2.0 * std::numbers::pi / config.ts;
    switch (scenario) {
        case Scenario::Ideal:
            return std::numeric_limits<double>::infinity();
        case Scenario::Uncorrected: {
            // First-order channel-periodic error dominates; report the worst
            // in-band interleave harmonic (k = 1..L-1).
            double worst = -std::numeric_limits<double>::infinity();
            for (int k = 1; k < config.channels; ++k)
                worst = std::max(worst, predicted_image_spur_dbc(taus, omega0, k));
            return -worst;
        }
        case Scenario::Scramble: {
            const double g2 = effective_g_squared(config);
            std::vector<ChannelMoment> moments;
            for (int i = 0; i < config.channels; ++i) {
                const ChannelTiming ch(i, config.skews[i], config.delta);
                moments.push_back({ch.tau, g2 + ch.alpha * ch.alpha});
            }
            return predicted_sfdr(moments, config.delta, omega0);
        }
        case Scenario::Shape: {
            std::vector<ChannelMoment> moments;
            for (int i = 0; i < config.channels; ++i) {
                const ChannelTiming ch(i, config.skews[i], config.delta);
                moments.push_back({ch.tau, predicted_second_moment(ch, config.ddsm)});
            }
            return predicted_sfdr(moments, config.delta, omega0);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

std::pair<int, int> sfdr_band_bins(const RunConfig& config, const SpectrumReport& report) {
    const int half = report.nfft / 2;
    if (config.subadc.kind == SubAdcSpec::Kind::DeltaSigma2) {
        const int lo = clamp_bin(static_cast<int>(std::lround(
                                     (config.analysis.sfdr_band_center -
                                      config.analysis.sfdr_band_halfwidth) * report.nfft)),
                                 half);
        const int hi = clamp_bin(static_cast<int>(std::lround(
                                     (config.analysis.sfdr_band_center +
                                      config.analysis.sfdr_band_halfwidth) * report.nfft)),
                                 half);
        return {lo, hi};
    }
    return {0, half};
}

ScenarioResult run_scenario(const RunConfig& config, Scenario scenario) {
    ScenarioResult result;
    result.scenario = scenario;
    result.capture = simulate(build_simulation_spec(config, scenario));
    result.spectrum = psd(result.capture.y, config.analysis.nfft, config.analysis.window);

    SpectrumReport& report = result.spectrum;
    report.carrier_bin = report.bin_of(carrier_frequency_norm(config));

    const auto [band_lo, band_hi] = sfdr_band_bins(config, report);
    const SfdrMeasurement sfdr = measure_sfdr(report, report.carrier_bin,
                                              config.analysis.carrier_exclusion_bins, band_lo, band_hi);
    report.sfdr_db = sfdr.sfdr_db;

    const std::vector<int> images = image_bins(config, report);
    for (int bin : images) report.spurs.push_back({bin, report.psd_db[bin]});
    report.spurs.push_back({sfdr.worst_bin, sfdr.worst_power_db});

    // Noise floor: the window around the interleave null, image bins and
    // carrier excluded.
    const int center = static_cast<int>(std::lround(config.analysis.sfdr_band_center * report.nfft));
    const int nw = static_cast<int>(std::lround(config.analysis.noise_window_halfwidth * report.nfft));
    std::vector<int> exclude = images;
    exclude.push_back(report.carrier_bin);
    result.noise_floor_bin_power =
        mean_band_power(report, clamp_bin(center - nw, report.nfft / 2),
                        clamp_bin(center + nw, report.nfft / 2), exclude, 2);
    report.inband_noise_power = result.noise_floor_bin_power;

    MetricsReport& metrics = result.metrics;
    metrics.scenario = scenario_name(scenario);
    metrics.sfdr_db_measured = report.sfdr_db;
    metrics.sfdr_db_predicted = predicted_sfdr_for(config, scenario);
    for (int i = 0; i < config.channels; ++i) {
        const ErrorMoments m = conditioned_error_moments(result.capture, i);
        metrics.error_mean_per_channel.push_back(m.mean);
        metrics.error_second_moment_per_channel.push_back(m.second_moment);
    }
    metrics.seed = config.seed;
    metrics.config_hash = config_hash(config);
    return result;
}

void write_spectrum_csv(const std::string& path, const SpectrumReport& report) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "freq_norm,psd_db\n";
    for (Eigen::Index k = 0; k < report.freq.size(); ++k)
        out << format_double(report.freq[k], 9) << "," << format_double(report.psd_db[k], 9) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

namespace {

ordered_json metrics_to_json(const MetricsReport& m) {
    ordered_json j;
    j["scenario"] = m.scenario;
    j["sfdr_db_measured"] = m.sfdr_db_measured;
    if (std::isinf(m.sfdr_db_predicted))
        j["sfdr_db_predicted"] = "inf";
    else
        j["sfdr_db_predicted"] = m.sfdr_db_predicted;
    j["error_mean_per_channel"] = m.error_mean_per_channel;
    j["error_second_moment_per_channel"] = m.error_second_moment_per_channel;
    j["seed"] = m.seed;
    j["config_hash"] = m.config_hash;
    return j;
}

}  // namespace

void write_metrics_json(const std::string& path, const std::vector<MetricsReport>& metrics) {
    ordered_json arr = ordered_json::array();
    for (const MetricsReport& m : metrics) arr.push_back(metrics_to_json(m));
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << arr.dump(2) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

std::optional<SweepParam> sweep_param_from_name(const std::string& name) {
    if (name == "g_squared") return SweepParam::GSquared;
    if (name == "delta") return SweepParam::Delta;
    if (name == "skew_scale") return SweepParam::SkewScale;
    return std::nullopt;
}

std::string sweep_param_name(SweepParam p) {
    switch (p) {
        case SweepParam::GSquared: return "g_squared";
        case SweepParam::Delta: return "delta";
        case SweepParam::SkewScale: return "skew_scale";
    }
    return "unknown";
}

Scenario default_sweep_scenario(SweepParam p) {
    switch (p) {
        case SweepParam::GSquared: return Scenario::Scramble;
        case SweepParam::Delta: return Scenario::Scramble;
        case SweepParam::SkewScale: return Scenario::Uncorrected;
    }
    return Scenario::Uncorrected;
}

std::vector<SweepRow> run_sweep(const RunConfig& config, SweepParam param,
                                const std::vector<double>& values, Scenario scenario) {
    std::vector<SweepRow> rows;
    for (double value : values) {
        RunConfig c = config;
        switch (param) {
            case SweepParam::GSquared:
                c.g_squared_auto = false;
                c.g_squared = value;
                break;
            case SweepParam::Delta:
                c.delta = value;
                break;
            case SweepParam::SkewScale:
                for (double& tau : c.skews) tau *= value;
                break;
        }
        SweepRow row;
        row.value = value;
        try {
            ScenarioResult result = run_scenario(c, scenario);
            row.status = "ok";
            row.metrics = result.metrics;
            row.noise_floor_bin_power = result.noise_floor_bin_power;
        } catch (const InfeasibleError& e) {
            row.status = std::string("infeasible: ") + e.what();
        } catch (const ConfigError& e) {
            row.status = std::string("invalid: ") + e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string join_semicolon(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ';';
        out += format_double(values[i], 9);
    }
    return out;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

}  // namespace

void write_sweep_csv(const std::string& path, SweepParam param, Scenario scenario,
                     const std::vector<SweepRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "param,value,status,scenario,sfdr_db_measured,sfdr_db_predicted,noise_floor_db,"
           "error_mean_per_channel,error_second_moment_per_channel,seed,config_hash\n";
    for (const SweepRow& row : rows) {
        out << sweep_param_name(param) << "," << format_double(row.value, 9) << ","
            << csv_quote(row.status) << "," << scenario_name(scenario) << ",";
        if (row.metrics) {
            const MetricsReport& m = *row.metrics;
            const double floor_db =
                row.noise_floor_bin_power > 0.0 ? 10.0 * std::log10(row.noise_floor_bin_power) : -400.0;
            out << format_double(m.sfdr_db_measured, 9) << ","
                << format_double(m.sfdr_db_predicted, 9) << "," << format_double(floor_db, 9) << ","
                << csv_quote(join_semicolon(m.error_mean_per_channel)) << ","
                << csv_quote(join_semicolon(m.error_second_moment_per_channel)) << "," << m.seed
                << "," << m.config_hash;
        } else {
            out << ",,,,,,";
        }
        out << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace tiadc
