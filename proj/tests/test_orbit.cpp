#include "epicycle/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"

using namespace epicycle;

namespace {

std::mt19937_64 rng(55100);
double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double random_alpha(double margin = 1e-2) {
    for (;;) {
        const double a = uniform(-5, 5);
        if (std::fabs(a) > margin && std::fabs(a - 1) > margin && std::fabs(a - 2) > margin)
            return a;
    }
}

ScaledConfig random_config(double eps = 1e-3) {
    return {random_alpha(), eps, uniform(0, 2 * M_PI), uniform(0, 2 * M_PI)};
}

constexpr double kBenchmarkAlphas[6] = {0.5, 1.5, -0.5, 2.5, -1.0, 3.0};

} // namespace

TEST_CASE("solve populates the five harmonics") {
    SUBCASE("eps = 0 leaves only the deferent") {
        const OrbitSolution sol = solve({3.0, 0.0, 0.8, 0.0});
        CHECK(abs(sol.terms[kEccentric].coeff) == 0.0);
        CHECK(abs(sol.terms[kEpicycle2].coeff) == 0.0);
        CHECK(abs(sol.terms[kEpicycleB].coeff) == 0.0);
        CHECK(abs(sol.terms[kEpicycleA].coeff) == 0.0);
        CHECK(abs(sol.terms[kDeferent].coeff - rotor(0.8)) <= 1e-16);
    }
    SUBCASE("frequency multiples at alpha = 3") {
        const OrbitSolution sol = solve({3.0, 1e-3, 0, 0});
        CHECK(sol.terms[kEccentric].freq_mult == 0.0);
        CHECK(sol.terms[kDeferent].freq_mult == 1.0);
        CHECK(sol.terms[kEpicycle2].freq_mult == 2.0);
        CHECK(sol.terms[kEpicycleB].freq_mult == -1.0);
        CHECK(sol.terms[kEpicycleA].freq_mult == 3.0);
    }
    SUBCASE("frequency multiples at alpha = -1/2") {
        const OrbitSolution sol = solve({-0.5, 1e-3, 0, 0});
        CHECK(sol.terms[kEpicycleB].freq_mult == 2.5);
        CHECK(sol.terms[kEpicycleA].freq_mult == -0.5);
    }
    SUBCASE("resonant input propagates") {
        CHECK_THROWS_AS(solve({1.0, 1e-3, 0, 0}), ResonantDivergenceError);
    }
}

TEST_CASE("switch-on continuity") {
    for (int i = 0; i < 1000; ++i) {
        const ScaledConfig cfg = random_config();
        const OrbitSolution sol = solve(cfg);
        const Vec2 r0{std::cos(cfg.phi0), std::sin(cfg.phi0)};
        const Vec2 v0{-std::sin(cfg.phi0), std::cos(cfg.phi0)};
        CHECK(norm(position(sol, 0.0) - r0) < 1e-12);
        CHECK(norm(velocity(sol, 0.0) - v0) < 1e-12);
    }
}

TEST_CASE("eps = 0 reduces to the circular orbit") {
    const OrbitSolution sol = solve({2.6, 0.0, 0.4, 0.0});
    for (double t = 0.0; t < 13.0; t += 0.61) {
        const Vec2 expect{std::cos(t + 0.4), std::sin(t + 0.4)};
        CHECK(norm(position(sol, t) - expect) <= 1e-15);
    }
}

TEST_CASE("velocity is the derivative of position") {
    const double h = 1e-4;
    for (int i = 0; i < 200; ++i) {
        const ScaledConfig cfg = random_config();
        const OrbitSolution sol = solve(cfg);
        const double t = uniform(0, 20);
        const Vec2 fd = (1.0 / (2.0 * h)) * (position(sol, t + h) - position(sol, t - h));
        CHECK(norm(fd - velocity(sol, t)) <= 1e-6);
    }
}

TEST_CASE("per-harmonic components") {
    const ScaledConfig cfg{3.0, 1e-3, 0.9, 2.2};
    const OrbitSolution sol = solve(cfg);
    SUBCASE("sum to the total position") {
        for (int i = 0; i < 1000; ++i) {
            const double t = uniform(0, 40);
            const auto parts = components(sol, t);
            Vec2 sum{};
            for (const Vec2& p : parts) sum = sum + p;
            CHECK(norm(sum - position(sol, t)) <= 1e-13);
        }
    }
    SUBCASE("eccentric part is constant") {
        const Vec2 ref = components(sol, 0.0)[kEccentric];
        for (double t = 0.0; t < 30.0; t += 1.7) {
            CHECK(norm(components(sol, t)[kEccentric] - ref) == 0.0);
        }
    }
    SUBCASE("epicycle at the light frequency has period 2 pi / alpha") {
        for (double t = 0.0; t < 10.0; t += 0.9) {
            const Vec2 a = components(sol, t)[kEpicycleA];
            const Vec2 b = components(sol, t + 2.0 * M_PI / cfg.alpha)[kEpicycleA];
            CHECK(norm(a - b) <= 1e-12 * std::max(norm(a), 1e-300));
        }
    }
}

TEST_CASE("components match their trigonometric expansions") {
    for (int i = 0; i < 200; ++i) {
        const ScaledConfig cfg = random_config();
        const OrbitSolution sol = solve(cfg);
        const double a0 = cfg.alpha, a1 = cfg.alpha - 1, a2 = cfg.alpha - 2,
                     a3 = cfg.alpha - 3;
        const double pa = cfg.eps / (a0 * a1 * a1 * a2);
        const double g = a1 * a3 + 1.5;
        const double p2 = 2.0 * cfg.phi0, d = cfg.delta;
        const double t = uniform(0, 25);
        const auto parts = components(sol, t);
        const double scale = std::fabs(pa) * std::max(1.0, std::fabs(g)) + 1e-300;

        // eccentric (frequency 0)
        const double x0 = pa * a1 * ((3.0 / 8.0) * (3.0 - a1 * a3) * std::cos(p2 - d) +
                                     (9.0 / 8.0) * (1.0 + a1 * a3) * std::cos(d));
        const double y0 = pa * a1 * ((3.0 / 8.0) * (3.0 - a1 * a3) * std::sin(p2 - d) +
                                     (9.0 / 8.0) * (1.0 + a1 * a3) * std::sin(d));
        CHECK(std::fabs(parts[kEccentric].x - x0) <= 1e-12 * scale);
        CHECK(std::fabs(parts[kEccentric].y - y0) <= 1e-12 * scale);

        // deferent (frequency 1): circular part plus DC-offset part
        const double k1 = 0.75 * a1 * a1 * a3 - 0.75 * a1 + 1.5;
        const double k2 = -1.25 * a1 * a1 * a3 - 0.75 * a1 - a1 * a3 - 1.5;
        const double x1 = std::cos(t + cfg.phi0) +
                          pa * (k1 * std::cos(t + p2 - d) + k2 * std::cos(t + d));
        const double y1 = std::sin(t + cfg.phi0) +
                          pa * (k1 * std::sin(t + p2 - d) + k2 * std::sin(t + d));
        CHECK(std::fabs(parts[kDeferent].x - x1) <= 1e-12 * std::max(scale, 1.0));
        CHECK(std::fabs(parts[kDeferent].y - y1) <= 1e-12 * std::max(scale, 1.0));

        // epicycle at 2 omega0
        const double m1 = -(3.0 / 8.0) * a1 * (a1 * a3 + 1.0);
        const double m2 = (1.0 / 8.0) * a1 * (a1 * a3 - 3.0);
        const double x2 = pa * (m1 * std::cos(2 * t + p2 - d) + m2 * std::cos(2 * t + d));
        const double y2 = pa * (m1 * std::sin(2 * t + p2 - d) + m2 * std::sin(2 * t + d));
        CHECK(std::fabs(parts[kEpicycle2].x - x2) <= 1e-12 * scale);
        CHECK(std::fabs(parts[kEpicycle2].y - y2) <= 1e-12 * scale);

        // counter-rotating epicycle at -(alpha - 2) omega0
        const double xb = pa * (-1.5) * std::cos(-a2 * t + p2 - d);
        const double yb = pa * (-1.5) * std::sin(-a2 * t + p2 - d);
        CHECK(std::fabs(parts[kEpicycleB].x - xb) <= 1e-12 * scale);
        CHECK(std::fabs(parts[kEpicycleB].y - yb) <= 1e-12 * scale);

        // epicycle at the light frequency alpha omega0
        const double xa = pa * g * std::cos(a0 * t + d);
        const double ya = pa * g * std::sin(a0 * t + d);
        CHECK(std::fabs(parts[kEpicycleA].x - xa) <= 1e-12 * scale);
        CHECK(std::fabs(parts[kEpicycleA].y - ya) <= 1e-12 * scale);
    }
}

TEST_CASE("rationalize") {
    const auto half = rationalize(2.5, 64);
    REQUIRE(half.has_value());
    CHECK(half->num == 5);
    CHECK(half->den == 2);

    const auto third = rationalize(1.0 / 3.0, 64);
    REQUIRE(third.has_value());
    CHECK(third->num == 1);
    CHECK(third->den == 3);

    const auto neg = rationalize(-0.5, 64);
    REQUIRE(neg.has_value());
    CHECK(neg->num == -1);
    CHECK(neg->den == 2);

    const auto whole = rationalize(-3.0, 64);
    REQUIRE(whole.has_value());
    CHECK(whole->num == -3);
    CHECK(whole->den == 1);

    CHECK(!rationalize(std::sqrt(2.0), 64).has_value());
    CHECK(rationalize(std::sqrt(2.0), 64, 1e-3).has_value());  // 17/12 etc.
    CHECK(!rationalize(1.41421356, 64).has_value());
}

TEST_CASE("orbit periods") {
    // tau = (n/2) tau0
    CHECK(period(0.5).half_periods == 4);
    CHECK(period(1.5).half_periods == 4);
    CHECK(period(-0.5).half_periods == 4);
    CHECK(period(2.5).half_periods == 4);
    CHECK(period(-1.0).half_periods == 2);
    CHECK(period(3.0).half_periods == 2);
    // zero frequencies are constant harmonics and do not break periodicity
    CHECK(period(0.0).half_periods == 2);
    CHECK(period(2.0).half_periods == 2);
    CHECK(!period(std::sqrt(2.0)).periodic());
    CHECK(period(0.5).tau() == doctest::Approx(4 * M_PI));

    // conjugate ratios produce equal periods
    for (int i = 0; i < 200; ++i) {
        const double a = uniform(-4, 4);
        const auto p1 = period(a), p2 = period(2.0 - a);
        CHECK(p1.half_periods == p2.half_periods);
    }
}

TEST_CASE("early closure candidates") {
    const auto c4 = early_closure_candidates(4);
    REQUIRE(c4.size() == 1);
    CHECK(c4[0] == doctest::Approx(2 * M_PI));
    const auto c2 = early_closure_candidates(2);
    REQUIRE(c2.size() == 1);
    CHECK(c2[0] == doctest::Approx(M_PI));
    const auto c12 = early_closure_candidates(12);
    REQUIRE(c12.size() == 2);
    CHECK(c12[0] == doctest::Approx(6 * M_PI));  // tau/2
    CHECK(c12[1] == doctest::Approx(4 * M_PI));  // tau/3
}

TEST_CASE("recurrence at the computed period, no early closure") {
    for (const double alpha : kBenchmarkAlphas) {
        const ScaledConfig cfg{alpha, 1e-3, 0.7, 1.9};
        const OrbitSolution sol = solve(cfg);
        const PeriodResult p = period(alpha);
        REQUIRE(p.periodic());
        const double tau = p.tau();
        double worst = 0.0;
        for (int i = 0; i <= 512; ++i) {
            const double t = tau * i / 512.0;
            worst = std::max(worst, norm(position(sol, t + tau) - position(sol, t)));
        }
        CHECK(worst < 1e-9);

        for (const double cand : early_closure_candidates(*p.half_periods)) {
            double dev = 0.0;
            for (int i = 0; i <= 512; ++i) {
                const double t = tau * i / 512.0;
                dev = std::max(dev, norm(position(sol, t + cand) - position(sol, t)));
            }
            CHECK(dev > 1e-6 * cfg.eps);
        }
    }
}

TEST_CASE("conjugate ratios share the five-frequency basis") {
    for (int i = 0; i < 300; ++i) {
        const double a = random_alpha();
        const OrbitSolution s1 = solve({a, 1e-3, 0.1, 0.2});
        const OrbitSolution s2 = solve({2.0 - a, 1e-3, 0.1, 0.2});
        std::array<double, 5> f1, f2;
        for (int k = 0; k < 5; ++k) {
            f1[k] = s1.terms[k].freq_mult;
            f2[k] = s2.terms[k].freq_mult;
        }
        std::sort(f1.begin(), f1.end());
        std::sort(f2.begin(), f2.end());
        for (int k = 0; k < 5; ++k) CHECK(std::fabs(f1[k] - f2[k]) <= 1e-12);
    }
}

TEST_CASE("perturbation coefficients vanish as alpha grows") {
    const double at_1e2 = limit_check(1e2, 1e-3);
    const double at_1e3 = limit_check(1e3, 1e-3);
    const double at_1e4 = limit_check(1e4, 1e-3);
    CHECK(at_1e3 <= 1e-5);  // 10 eps / alpha
    CHECK(at_1e3 < at_1e2);
    CHECK(at_1e4 < at_1e3);
    CHECK(limit_check(1e3, 0.0) == 0.0);
}

// Substitute the co-rotating reconstruction into the perturbation equation
//   z'' + 2 i z' - (3/2)(z + e^{2 phi0 i} conj(z)) = -eps e^{i delta} e^{i (alpha-1) t}
// with exact analytic derivatives.  The four oscillatory terms solve it
// identically; the DC offset c_0 is excluded (it contributes the reported
// dc_k0 imbalance and no time dependence).
namespace {

ComplexAmp corotating_residual(const CoeffSet& c, const ScaledConfig& cfg, double t,
                               bool include_dc) {
    const double a1 = cfg.alpha - 1.0;
    struct Mode { ComplexAmp coeff; double freq; };
    const Mode modes[4] = {
        {c.c_m1, -1.0}, {c.c_p1, 1.0}, {c.b_m1, -a1}, {c.b_p1, a1}};
    ComplexAmp z{}, zdot{}, zddot{};
    for (const Mode& m : modes) {
        const ComplexAmp e = m.coeff * rotor(m.freq * t);
        z = z + e;
        zdot = zdot + ComplexAmp{0, m.freq} * e;
        zddot = zddot + (-m.freq * m.freq) * e;
    }
    if (include_dc) z = z + c.c_0;
    const ComplexAmp conj_z = [&] {
        ComplexAmp w{};
        for (const Mode& m : modes) w = w + conj(m.coeff) * rotor(-m.freq * t);
        if (include_dc) w = w + conj(c.c_0);
        return w;
    }();
    const ComplexAmp forcing = cfg.eps * rotor(cfg.delta) * rotor(a1 * t);
    return zddot + ComplexAmp{0, 2} * zdot -
           1.5 * (z + rotor(2 * cfg.phi0) * conj_z) + forcing;
}

} // namespace

TEST_CASE("oscillatory reconstruction solves the co-rotating equation") {
    for (const double alpha : kBenchmarkAlphas) {
        const ScaledConfig cfg{alpha, 1e-3, uniform(0, 2 * M_PI), uniform(0, 2 * M_PI)};
        const CoeffSet c = coefficient_set(cfg);
        for (int i = 0; i < 1000; ++i) {
            const double t = 20.0 * M_PI * i / 999.0;
            CHECK(abs(corotating_residual(c, cfg, t, false)) < 1e-11 * cfg.eps);
        }
    }
}

TEST_CASE("DC offset contributes the documented constant imbalance") {
    const ScaledConfig cfg{3.0, 1e-3, 0.4, 1.3};
    const CoeffSet c = coefficient_set(cfg);
    // Expected residual: -(3/2)(c_0 + e^{2 phi0 i} conj(c_0)), constant in t.
    const ComplexAmp expect = -1.5 * (c.c_0 + rotor(2 * cfg.phi0) * conj(c.c_0));
    for (double t = 0.0; t < 10.0; t += 0.83) {
        const ComplexAmp res = corotating_residual(c, cfg, t, true);
        CHECK(abs(res - expect) <= 1e-12 * cfg.eps + 1e-11 * abs(expect));
    }
    // and equals -(3/4)(amp + e^{2 phi0 i} conj(amp)) / (alpha - 1) ... times -2:
    // c_0 + V conj(c_0) = -(amp + V conj(amp)) / (2 (alpha - 1))
    const ComplexAmp amp = cfg.eps * rotor(cfg.delta);
    const ComplexAmp predicted =
        (3.0 / (4.0 * (cfg.alpha - 1.0))) * (amp + rotor(2 * cfg.phi0) * conj(amp));
    CHECK(abs(expect - predicted) <= 1e-12 * cfg.eps);
}
