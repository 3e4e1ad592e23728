#pragma once

#include <vector>

#include "tiadc/errors.hpp"

namespace tiadc {

/// One sinusoidal component: amplitude * sin(omega * t + phase).
struct Tone {
    double amplitude = 1.0;  // relative to full scale 1.0
    double omega = 1.0;      // angular frequency, rad/s
    double phase = 0.0;      // rad
};

/// Analytic continuous-time stimulus, evaluable (with exact derivatives)
/// at arbitrary instants. Closed-form on purpose: conditioned sampling
/// happens at irregular instants no uniform grid captures, and the Taylor
/// oracle needs exact dx/dt, d2x/dt2.
struct TestSignal {
    enum class Kind { Sinusoid, Multitone };

    Kind kind = Kind::Sinusoid;
    std::vector<Tone> tones;

    static TestSignal sinusoid(double amplitude, double omega, double phase = 0.0);
    static TestSignal multitone(std::vector<Tone> tones);

    /// Highest tone frequency in Hz (bandwidth of the tone sum).
    double bandwidth_hz() const;
    double max_omega() const;

    /// sum_k A_k * w_k^order; |d^order x/dt^order| never exceeds this.
    double derivative_bound(int order) const;

    void validate() const;  // throws ConfigError on invariant violation
};

/// x(t) = sum_k A_k sin(w_k t + phi_k).
double eval(const TestSignal& signal, double t);

/// Exact closed-form derivative of the tone sum; order 0 is eval itself.
/// Orders above 4 are rejected (the engine never needs more than the
/// third-order term for remainder bounds).
double eval_derivative(const TestSignal& signal, double t, int order);

}  // namespace tiadc
