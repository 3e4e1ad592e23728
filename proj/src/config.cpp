#include "tiadc/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace tiadc {

using ordered_json = nlohmann::ordered_json;

RunConfig::RunConfig() {
    skews = {0.0, -0.15, 0.15, 0.15};
    // Coherent odd-bin tone (bin 125 of 65536) deep inside the oversampled
    // band, so interleave images land around the F_S/4 noise null.
    signal = TestSignal::sinusoid(0.5, 2.0 * std::numbers::pi * 125.0 / 65536.0, 0.0);
    subadc.kind = SubAdcSpec::Kind::DeltaSigma2;
    subadc.levels = 8;
    subadc.full_scale = 1.0;
    ddsm.order = 2;
    ddsm.levels = 4;
    ddsm.step = 2.0;
    ddsm.input_bits = 16;
    ddsm.dither_enabled = true;
}

namespace {

std::string signal_kind_name(TestSignal::Kind kind) {
    return kind == TestSignal::Kind::Sinusoid ? "sinusoid" : "multitone";
}

TestSignal::Kind signal_kind_from(const std::string& name) {
    if (name == "sinusoid") return TestSignal::Kind::Sinusoid;
    if (name == "multitone") return TestSignal::Kind::Multitone;
    throw ConfigError("signal.kind must be 'sinusoid' or 'multitone'");
}

std::string subadc_kind_name(SubAdcSpec::Kind kind) {
    return kind == SubAdcSpec::Kind::IdealUniform ? "ideal_uniform" : "delta_sigma2";
}

SubAdcSpec::Kind subadc_kind_from(const std::string& name) {
    if (name == "ideal_uniform") return SubAdcSpec::Kind::IdealUniform;
    if (name == "delta_sigma2") return SubAdcSpec::Kind::DeltaSigma2;
    throw ConfigError("subadc.kind must be 'ideal_uniform' or 'delta_sigma2'");
}

Window window_from(const std::string& name) {
    if (name == "rectangular") return Window::Rectangular;
    if (name == "hann") return Window::Hann;
    throw ConfigError("analysis.window must be 'rectangular' or 'hann'");
}

template <typename T>
T require(const ordered_json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("config missing key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    RunConfig c;
    const ordered_json clock = require<ordered_json>(j, "clock");
    c.channels = require<int>(clock, "channels");
    c.ts = require<double>(clock, "ts");
    c.skews = require<std::vector<double>>(j, "skews");
    c.delta = require<double>(j, "delta");

    const ordered_json sig = require<ordered_json>(j, "signal");
    std::vector<Tone> tones;
    for (const ordered_json& jt : require<ordered_json>(sig, "tones")) {
        Tone t;
        t.amplitude = require<double>(jt, "amplitude");
        t.omega = 2.0 * std::numbers::pi * require<double>(jt, "frequency");
        t.phase = require<double>(jt, "phase");
        tones.push_back(t);
    }
    c.signal.kind = signal_kind_from(require<std::string>(sig, "kind"));
    c.signal.tones = std::move(tones);

    const ordered_json sub = require<ordered_json>(j, "subadc");
    c.subadc.kind = subadc_kind_from(require<std::string>(sub, "kind"));
    c.subadc.levels = require<int>(sub, "levels");
    c.subadc.full_scale = require<double>(sub, "full_scale");

    const ordered_json scr = require<ordered_json>(j, "scramble");
    if (!scr.contains("g_squared")) throw ConfigError("config missing key 'g_squared'");
    if (scr.at("g_squared").is_string()) {
        if (scr.at("g_squared").get<std::string>() != "auto")
            throw ConfigError("scramble.g_squared must be a number or 'auto'");
        c.g_squared_auto = true;
        c.g_squared = 0.0;
    } else {
        c.g_squared_auto = false;
        c.g_squared = require<double>(scr, "g_squared");
    }
    c.scramble_dither_bits = require<int>(scr, "dither_bits");

    const ordered_json dd = require<ordered_json>(j, "ddsm");
    c.ddsm.order = require<int>(dd, "order");
    c.ddsm.levels = require<int>(dd, "levels");
    c.ddsm.step = require<double>(dd, "step");
    c.ddsm.input_bits = require<int>(dd, "input_bits");
    c.ddsm.dither_enabled = require<bool>(dd, "lsb_dither");

    c.n_total = require<std::int64_t>(j, "n_total");
    c.seed = require<std::uint64_t>(j, "seed");

    const ordered_json an = require<ordered_json>(j, "analysis");
    c.analysis.window = window_from(require<std::string>(an, "window"));
    c.analysis.nfft = require<int>(an, "nfft");
    c.analysis.carrier_exclusion_bins = require<int>(an, "carrier_exclusion_bins");
    c.analysis.sfdr_band_center = require<double>(an, "sfdr_band_center");
    c.analysis.sfdr_band_halfwidth = require<double>(an, "sfdr_band_halfwidth");
    c.analysis.noise_window_halfwidth = require<double>(an, "noise_window_halfwidth");
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("failed reading config file: " + path);
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
    ordered_json j;
    j["clock"] = {{"channels", c.channels}, {"ts", c.ts}};
    j["skews"] = c.skews;
    j["delta"] = c.delta;
    ordered_json tones = ordered_json::array();
    for (const Tone& t : c.signal.tones)
        tones.push_back({{"amplitude", t.amplitude},
                         {"frequency", t.omega / (2.0 * std::numbers::pi)},
                         {"phase", t.phase}});
    j["signal"] = {{"kind", signal_kind_name(c.signal.kind)}, {"tones", tones}};
    j["subadc"] = {{"kind", subadc_kind_name(c.subadc.kind)},
                   {"levels", c.subadc.levels},
                   {"full_scale", c.subadc.full_scale}};
    if (c.g_squared_auto)
        j["scramble"] = {{"g_squared", "auto"}, {"dither_bits", c.scramble_dither_bits}};
    else
        j["scramble"] = {{"g_squared", c.g_squared}, {"dither_bits", c.scramble_dither_bits}};
    j["ddsm"] = {{"order", c.ddsm.order},
                 {"levels", c.ddsm.levels},
                 {"step", c.ddsm.step},
                 {"input_bits", c.ddsm.input_bits},
                 {"lsb_dither", c.ddsm.dither_enabled}};
    j["n_total"] = c.n_total;
    j["seed"] = c.seed;
    j["analysis"] = {{"window", window_name(c.analysis.window)},
                     {"nfft", c.analysis.nfft},
                     {"carrier_exclusion_bins", c.analysis.carrier_exclusion_bins},
                     {"sfdr_band_center", c.analysis.sfdr_band_center},
                     {"sfdr_band_halfwidth", c.analysis.sfdr_band_halfwidth},
                     {"noise_window_halfwidth", c.analysis.noise_window_halfwidth}};
    return j.dump(2) + "\n";
}

std::string config_hash(const RunConfig& config) {
    const std::string text = serialize_config(config);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xF];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

void validate_config(const RunConfig& c) {
    if (c.channels < 1) throw ConfigError("clock.channels must be >= 1");
    if (!(c.ts > 0.0)) throw ConfigError("clock.ts must be > 0");
    if (static_cast<int>(c.skews.size()) != c.channels)
        throw ConfigError("skews must list one value per channel");
    if (!(c.delta > 0.0)) throw ConfigError("delta must be > 0");
    c.signal.validate();
    c.subadc.validate();
    c.ddsm.validate();
    if (!c.g_squared_auto && !(c.g_squared > 0.0))
        throw ConfigError("scramble.g_squared must be > 0");
    if (c.n_total < c.channels)
        throw ConfigError("n_total must cover at least one interleave frame (N >= L)");
    if (c.analysis.nfft < 2 || (c.analysis.nfft & (c.analysis.nfft - 1)) != 0)
        throw ConfigError("analysis.nfft must be a power of two");
    if (c.analysis.nfft > c.n_total) throw ConfigError("analysis.nfft must not exceed n_total");
    if (c.analysis.carrier_exclusion_bins < 0)
        throw ConfigError("analysis.carrier_exclusion_bins must be >= 0");
    if (!(c.analysis.sfdr_band_center >= 0.0 && c.analysis.sfdr_band_center <= 0.5))
        throw ConfigError("analysis.sfdr_band_center must lie in [0, 0.5] cycles/sample");
    if (!(c.analysis.sfdr_band_halfwidth > 0.0))
        throw ConfigError("analysis.sfdr_band_halfwidth must be > 0");
    if (!(c.analysis.noise_window_halfwidth > 0.0))
        throw ConfigError("analysis.noise_window_halfwidth must be > 0");
    for (int i = 0; i < c.channels; ++i)
        ChannelTiming(i, c.skews[i], c.delta);  // enforces |alpha| < 1 per channel
}

double effective_g_squared(const RunConfig& c) {
    if (!c.g_squared_auto) return c.g_squared;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < c.channels; ++i) {
        const ChannelTiming ch(i, c.skews[i], c.delta);
        const auto [l, h] = feasible_g_range(ch.alpha);
        lo = std::max(lo, l);
        hi = std::min(hi, h);
    }
    const double g2 = std::max(lo * 1.05, 0.01);
    if (!(g2 < hi)) {
        std::ostringstream msg;
        msg << "no g^2 is feasible for every channel (joint range (" << lo << ", " << hi << "))";
        throw InfeasibleError(msg.str());
    }
    return g2;
}

}  // namespace tiadc
