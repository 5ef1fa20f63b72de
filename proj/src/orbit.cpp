#include "epicycle/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace epicycle {

namespace {

constexpr double kTau0 = 2.0 * 3.14159265358979323846;

Rational reduced(std::int64_t num, std::int64_t den) {
    if (den < 0) { num = -num; den = -den; }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    return {g ? num / g : num, g ? den / g : den};
}

// lcm of two positive reduced rationals: lcm(nums) / gcd(dens).
Rational rational_lcm(Rational a, Rational b) {
    return {std::lcm(a.num, b.num), std::gcd(a.den, b.den)};
}

} // namespace

OrbitSolution solve(const ScaledConfig& cfg, bool allow_near, double guard) {
    const CoeffSet coeffs = coefficient_set(cfg, allow_near, guard);
    OrbitSolution sol;
    sol.alpha = cfg.alpha;
    sol.phi0 = cfg.phi0;
    sol.delta = cfg.delta;
    sol.eps = cfg.eps;
    sol.terms[kEccentric] = {coeffs.c_m1, 0.0};
    sol.terms[kDeferent] = {rotor(cfg.phi0) + coeffs.c_0, 1.0};
    sol.terms[kEpicycle2] = {coeffs.c_p1, 2.0};
    sol.terms[kEpicycleB] = {coeffs.b_m1, -(cfg.alpha - 2.0)};
    sol.terms[kEpicycleA] = {coeffs.b_p1, cfg.alpha};
    return sol;
}

Vec2 position(const OrbitSolution& sol, double t) {
    ComplexAmp sum{};
    for (const HarmonicTerm& term : sol.terms) {
        sum = sum + term.coeff * rotor(term.freq_mult * t);
    }
    return vec_of(sum);
}

Vec2 velocity(const OrbitSolution& sol, double t) {
    ComplexAmp sum{};
    for (const HarmonicTerm& term : sol.terms) {
        const ComplexAmp unit{0.0, term.freq_mult};  // i * f
        sum = sum + unit * term.coeff * rotor(term.freq_mult * t);
    }
    return vec_of(sum);
}

std::array<Vec2, 5> components(const OrbitSolution& sol, double t) {
    std::array<Vec2, 5> out;
    for (int i = 0; i < 5; ++i) {
        out[i] = vec_of(sol.terms[i].coeff * rotor(sol.terms[i].freq_mult * t));
    }
    return out;
}

std::optional<Rational> rationalize(double x, std::int64_t max_den, double tol) {
    if (max_den < 1 || !std::isfinite(x)) return std::nullopt;
    // Continued-fraction convergents p_k/q_k until the denominator cap.
    double y = x;
    std::int64_t p_prev = 0, q_prev = 1;  // convergent k-2
    std::int64_t p = 1, q = 0;            // convergent k-1
    for (int iter = 0; iter < 64; ++iter) {
        const double fl = std::floor(y);
        if (fl > 9e17 || fl < -9e17) break;
        const std::int64_t a = static_cast<std::int64_t>(fl);
        const std::int64_t p_next = a * p + p_prev;
        const std::int64_t q_next = a * q + q_prev;
        if (q_next > max_den) break;
        p_prev = p; q_prev = q;
        p = p_next; q = q_next;
        if (std::fabs(x - static_cast<double>(p) / static_cast<double>(q)) <= tol) {
            return reduced(p, q);
        }
        const double frac = y - fl;
        if (frac < 1e-15) break;
        y = 1.0 / frac;
    }
    return std::nullopt;
}

double PeriodResult::tau() const {
    return half_periods ? static_cast<double>(*half_periods) * 0.5 * kTau0 : 0.0;
}

PeriodResult period(double alpha, std::int64_t max_den) {
    const auto ra = rationalize(alpha, max_den);
    const auto ra2 = rationalize(alpha - 2.0, max_den);
    if (!ra || !ra2) return {std::nullopt};

    // Rotational periods in tau0 units; zero frequencies are constant terms.
    std::vector<Rational> periods = {{1, 1}, {1, 2}};
    for (const Rational& f : {*ra, *ra2}) {
        if (f.num == 0) continue;
        periods.push_back(reduced(f.den, f.num < 0 ? -f.num : f.num));
    }
    Rational lcm = periods.front();
    for (std::size_t i = 1; i < periods.size(); ++i) {
        lcm = rational_lcm(lcm, periods[i]);
    }
    // Denominator of the lcm divides 2, so n = 2 tau/tau0 is an integer.
    const std::int64_t n = 2 * lcm.num / lcm.den;
    return {n};
}

std::vector<double> early_closure_candidates(std::int64_t n) {
    std::vector<double> out;
    const double tau = static_cast<double>(n) * 0.5 * kTau0;
    std::int64_t rest = n;
    for (std::int64_t p = 2; p * p <= rest; ++p) {
        if (rest % p == 0) {
            out.push_back(tau / static_cast<double>(p));
            while (rest % p == 0) rest /= p;
        }
    }
    if (rest > 1) out.push_back(tau / static_cast<double>(rest));
    return out;
}

double limit_check(double alpha_large, double eps) {
    const ScaledConfig cfg{alpha_large, eps, 0.0, 0.0};
    const CoeffSet c = coefficient_set(cfg);
    return std::max({abs(c.c_m1), abs(c.c_0), abs(c.c_p1), abs(c.b_m1), abs(c.b_p1)});
}

} // namespace epicycle
