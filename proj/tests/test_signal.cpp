#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tiadc/signal.hpp"

using namespace tiadc;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("eval matches closed-form sine values") {
    const TestSignal s = TestSignal::sinusoid(1.0, 2.0 * kPi, 0.0);
    CHECK(eval(s, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(eval(s, 0.25) == doctest::Approx(1.0).epsilon(1e-15));

    // Frozen against an independent 40-digit evaluation of 2*sin(4.6).
    const TestSignal s2 = TestSignal::sinusoid(2.0, 3.0, 0.7);
    CHECK(eval(s2, 1.3) == doctest::Approx(-1.9873820072669289).epsilon(1e-14));
}

TEST_CASE("multitone evaluation and exact second derivative") {
    const TestSignal m = TestSignal::multitone({{1.25, 2.2, 0.3}, {0.5, 7.1, -1.1}});
    // Frozen 40-digit reference values.
    CHECK(eval(m, 0.77) == doctest::Approx(0.6692504921783277).epsilon(1e-14));
    CHECK(eval_derivative(m, 0.77, 2) == doctest::Approx(18.200232773952132).epsilon(1e-14));
}

TEST_CASE("derivatives: trivial cases") {
    const double w = 5.3;
    const TestSignal s = TestSignal::sinusoid(1.0, w, 0.0);
    CHECK(eval_derivative(s, 0.0, 1) == doctest::Approx(w).epsilon(1e-15));

    // order 0 is eval itself
    for (double t : {0.0, 0.31, 2.7}) CHECK(eval_derivative(s, t, 0) == eval(s, t));

    // analytic second derivative: -w^2 sin(wt)
    for (double t : {0.1, 0.9, 4.2})
        CHECK(eval_derivative(s, t, 2) == doctest::Approx(-w * w * std::sin(w * t)).epsilon(1e-13));
}

TEST_CASE("derivative order above 4 is rejected") {
    const TestSignal s = TestSignal::sinusoid(1.0, 1.0);
    CHECK_THROWS_AS(eval_derivative(s, 0.0, 5), ConfigError);
    CHECK_NOTHROW(eval_derivative(s, 0.0, 4));
}

namespace {

// Extended-precision tone-sum evaluator, independent of the library path,
// so central differences stay above the cancellation noise.
long double eval_ld(const TestSignal& s, long double t) {
    long double x = 0.0L;
    for (const Tone& tone : s.tones)
        x += static_cast<long double>(tone.amplitude) *
             sinl(static_cast<long double>(tone.omega) * t + static_cast<long double>(tone.phase));
    return x;
}

}  // namespace

TEST_CASE("derivatives agree with central finite differences") {
    const TestSignal m = TestSignal::multitone({{0.8, 3.1, 0.2}, {0.3, 11.0, 1.4}});
    const long double h = 1e-5L / m.max_omega();
    for (double t : {0.0, 0.123, 0.5, 1.83, 7.7}) {
        const long double tl = t;
        const double fd1 = static_cast<double>((eval_ld(m, tl + h) - eval_ld(m, tl - h)) / (2.0L * h));
        const double fd2 = static_cast<double>(
            (eval_ld(m, tl + h) - 2.0L * eval_ld(m, tl) + eval_ld(m, tl - h)) / (h * h));
        CHECK(eval_derivative(m, t, 1) ==
              doctest::Approx(fd1).epsilon(1e-6).scale(m.derivative_bound(1)));
        CHECK(eval_derivative(m, t, 2) ==
              doctest::Approx(fd2).epsilon(1e-6).scale(m.derivative_bound(2)));
    }
}

TEST_CASE("single tones are periodic in 2*pi/omega") {
    const TestSignal s = TestSignal::sinusoid(0.9, 4.7, 0.4);
    const double period = 2.0 * kPi / 4.7;
    for (double t : {0.05, 0.4, 1.1}) CHECK(std::abs(eval(s, t) - eval(s, t + period)) < 1e-12);
}

TEST_CASE("invalid signals are rejected") {
    CHECK_THROWS_AS(TestSignal::sinusoid(-1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(TestSignal::sinusoid(1.0, 0.0), ConfigError);
    CHECK_THROWS_AS(TestSignal::multitone({}), ConfigError);
}
