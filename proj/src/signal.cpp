#include "tiadc/signal.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace tiadc {

TestSignal TestSignal::sinusoid(double amplitude, double omega, double phase) {
    TestSignal s;
    s.kind = Kind::Sinusoid;
    s.tones.push_back({amplitude, omega, phase});
    s.validate();
    return s;
}

TestSignal TestSignal::multitone(std::vector<Tone> tones) {
    TestSignal s;
    s.kind = Kind::Multitone;
    s.tones = std::move(tones);
    s.validate();
    return s;
}

void TestSignal::validate() const {
    if (tones.empty()) throw ConfigError("signal must contain at least one tone");
    if (kind == Kind::Sinusoid && tones.size() != 1)
        throw ConfigError("sinusoid signal must contain exactly one tone");
    for (const Tone& tone : tones) {
        if (!std::isfinite(tone.amplitude) || tone.amplitude < 0.0)
            throw ConfigError("tone amplitude must be finite and >= 0");
        if (!std::isfinite(tone.omega) || tone.omega <= 0.0)
            throw ConfigError("tone frequency must be finite and > 0");
        if (!std::isfinite(tone.phase)) throw ConfigError("tone phase must be finite");
    }
}

double TestSignal::max_omega() const {
    double w = 0.0;
    for (const Tone& tone : tones) w = std::max(w, tone.omega);
    return w;
}

double TestSignal::bandwidth_hz() const { return max_omega() / (2.0 * std::numbers::pi); }

double TestSignal::derivative_bound(int order) const {
    double bound = 0.0;
    for (const Tone& tone : tones) bound += tone.amplitude * std::pow(tone.omega, order);
    return bound;
}

double eval(const TestSignal& signal, double t) {
    double x = 0.0;
    for (const Tone& tone : signal.tones) x += tone.amplitude * std::sin(tone.omega * t + tone.phase);
    return x;
}

double eval_derivative(const TestSignal& signal, double t, int order) {
    if (order < 0 || order > 4)
        throw ConfigError("unsupported derivative order (supported: 0..4)");
    // d^k/dt^k sin(wt+p) = w^k sin(wt + p + k*pi/2)
    double x = 0.0;
    for (const Tone& tone : signal.tones) {
        const double arg = tone.omega * t + tone.phase + 0.5 * std::numbers::pi * order;
        x += tone.amplitude * std::pow(tone.omega, order) * std::sin(arg);
    }
    return x;
}

}  // namespace tiadc
