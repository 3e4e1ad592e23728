#include <doctest.h>

#include <array>
#include <cmath>

#include "tiadc/scramble.hpp"

using namespace tiadc;

namespace {

// Independent oracle: naive Gaussian elimination with partial pivoting on
// the moment system, written without reference to the library solver.
std::array<double, 3> solve3_oracle(double alpha, double g2) {
    double m[3][4] = {
        {1.0, 1.0, 1.0, 1.0},
        {1.0 - alpha, -alpha, -(1.0 + alpha), 0.0},
        {(1.0 - alpha) * (1.0 - alpha), alpha * alpha, (1.0 + alpha) * (1.0 + alpha), g2},
    };
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        for (int c = 0; c < 4; ++c) std::swap(m[col][c], m[pivot][c]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

// Deterministic test-local generator for parameter draws.
double unit_draw(std::uint64_t& state) {
    state = mix64(state);
    return static_cast<double>(state >> 11) / 9007199254740992.0;  // 2^53
}

}  // namespace

TEST_CASE("symmetric skew-free probabilities") {
    const auto p = solve_probabilities(0.0, 0.25);
    CHECK(p.p_minus1 == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(p.p_zero == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(p.p_plus1 == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("solution matches the independent 3x3 elimination") {
    const auto p = solve_probabilities(0.15, 0.25);
    const auto oracle = solve3_oracle(0.15, 0.25);
    CHECK(p.p_minus1 == doctest::Approx(oracle[0]).epsilon(1e-12));
    CHECK(p.p_zero == doctest::Approx(oracle[1]).epsilon(1e-12));
    CHECK(p.p_plus1 == doctest::Approx(oracle[2]).epsilon(1e-12));
    // Frozen values from the oracle.
    CHECK(p.p_minus1 == doctest::Approx(0.21125).epsilon(1e-12));
    CHECK(p.p_zero == doctest::Approx(0.7275).epsilon(1e-12));
    CHECK(p.p_plus1 == doctest::Approx(0.06125).epsilon(1e-12));
}

TEST_CASE("infeasible targets are rejected") {
    CHECK_THROWS_AS(solve_probabilities(0.9, 0.05), InfeasibleError);   // p(+1) = -0.02
    CHECK_THROWS_AS(solve_probabilities(0.0, 1.01), InfeasibleError);   // p(0) < 0
    CHECK_THROWS_AS(solve_probabilities(1.2, 0.25), ConfigError);       // |alpha| >= 1
}

TEST_CASE("feasible g range brackets the solvable region") {
    auto r0 = feasible_g_range(0.0);
    CHECK(r0.first == 0.0);
    CHECK(r0.second == 1.0);

    auto rhalf = feasible_g_range(0.5);
    CHECK(rhalf.first == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(rhalf.second == doctest::Approx(0.75).epsilon(1e-15));

    auto r15 = feasible_g_range(0.15);
    CHECK(r15.first == doctest::Approx(0.1275).epsilon(1e-15));
    CHECK(r15.second == doctest::Approx(0.9775).epsilon(1e-15));

    // Cross-check by scanning solve feasibility on a g^2 grid.
    for (double alpha : {-0.6, -0.15, 0.0, 0.3, 0.82}) {
        const auto [lo, hi] = feasible_g_range(alpha);
        for (int i = 0; i <= 40; ++i) {
            const double g2 = 0.025 * i;
            if (g2 <= 0.0) continue;
            const bool inside = g2 > lo && g2 < hi;
            if (inside)
                CHECK_NOTHROW(solve_probabilities(alpha, g2));
            else if (g2 < lo - 1e-12 || g2 > hi + 1e-12)
                CHECK_THROWS_AS(solve_probabilities(alpha, g2), InfeasibleError);
        }
    }
}

TEST_CASE("moment identities hold algebraically for feasible pairs") {
    std::uint64_t state = 0xC0FFEE;
    for (int trial = 0; trial < 200; ++trial) {
        const double alpha = -0.95 + 1.9 * unit_draw(state);
        const auto [lo, hi] = feasible_g_range(alpha);
        const double g2 = lo + (0.05 + 0.9 * unit_draw(state)) * (hi - lo);
        const auto p = solve_probabilities(alpha, g2);

        CHECK(std::abs(p.p_minus1 + p.p_zero + p.p_plus1 - 1.0) < 1e-12);
        CHECK(std::abs((p.p_minus1 - p.p_plus1) - alpha) < 1e-12);
        CHECK(std::abs((p.p_minus1 + p.p_plus1) - (g2 + alpha * alpha)) < 1e-12);
        CHECK(p.p_minus1 >= 0.0);
        CHECK(p.p_minus1 <= 1.0);
        CHECK(p.p_zero >= 0.0);
        CHECK(p.p_zero <= 1.0);
        CHECK(p.p_plus1 >= 0.0);
        CHECK(p.p_plus1 <= 1.0);
    }
}

TEST_CASE("edge thresholds, ties to the upper region") {
    ScrambleProbabilities p;
    p.p_minus1 = 0.2;
    p.p_zero = 0.5;
    p.p_plus1 = 0.3;

    CHECK(edge_from_unit(p, 0.1) == -1);
    CHECK(edge_from_unit(p, 0.69) == 0);
    CHECK(edge_from_unit(p, 0.70) == +1);  // exact threshold goes up
    CHECK(edge_from_unit(p, 0.2) == 0);
    CHECK(edge_from_unit(p, 0.0) == -1);

    // draw_edge consumes the dither stream through the same thresholds.
    DitherSource d(24, 42, 7);
    int histogram[3] = {0, 0, 0};
    for (int n = 0; n < 200000; ++n) {
        DitherSource probe = d;  // copy, so the draw can be inspected
        const double u = probe.next_unit();
        const int r = draw_edge(p, d);
        CHECK(r == edge_from_unit(p, u));
        ++histogram[r + 1];
    }
    CHECK(histogram[0] / 200000.0 == doctest::Approx(0.2).epsilon(0.02));
    CHECK(histogram[1] / 200000.0 == doctest::Approx(0.5).epsilon(0.02));
    CHECK(histogram[2] / 200000.0 == doctest::Approx(0.3).epsilon(0.02));
}

TEST_CASE("sequences are deterministic and hit their moments") {
    const ChannelTiming ch(1, 0.15 / 3.0, 1.0 / 3.0);  // alpha = 0.15
    const std::size_t n = 1u << 20;

    const auto a = generate_scramble_sequence(ch, 0.25, n, 77);
    const auto b = generate_scramble_sequence(ch, 0.25, n, 77);
    CHECK(a == b);

    const auto c = generate_scramble_sequence(ch, 0.25, n, 78);
    CHECK(a != c);

    double mean = 0.0, second = 0.0;
    for (int r : a) {
        CHECK((r == -1 || r == 0 || r == 1));
        mean += r;
        second += r * r;
    }
    mean /= n;
    second /= n;

    const double alpha = ch.alpha;
    const double expected_second = 0.25 + alpha * alpha;
    const double var = expected_second - alpha * alpha;  // Var(r)
    const double se_mean = std::sqrt(var / n);
    const double var_r2 = expected_second * (1.0 - expected_second);
    const double se_second = std::sqrt(var_r2 / n);

    CHECK(std::abs(mean + alpha) < 5.0 * se_mean);
    CHECK(std::abs(second - expected_second) < 5.0 * se_second);
}

TEST_CASE("tiny g^2 with zero skew degenerates to all-zero edges") {
    const ChannelTiming ch(0, 0.0, 1.0);
    const auto seq = generate_scramble_sequence(ch, 1e-4, 4096, 5);
    int nonzero = 0;
    for (int r : seq) nonzero += (r != 0);
    CHECK(nonzero < 4096 / 100);  // p(0) = 1 - 1e-4
}
