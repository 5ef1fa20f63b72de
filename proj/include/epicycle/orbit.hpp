#ifndef EPICYCLE_ORBIT_HPP
#define EPICYCLE_ORBIT_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "epicycle/coefficients.hpp"

// The analytic orbit: five rotating harmonics at frequency multiples
// {0, 1, 2, -(alpha-2), alpha} of omega0, plus period analysis.

namespace epicycle {

struct HarmonicTerm {
    ComplexAmp coeff;        // r0 units
    double freq_mult = 0.0;  // multiple of omega0, may be non-integer
};

// Term order: eccentric (0), deferent (1), epicycle2 (2),
// epicycleB (-(alpha-2)), epicycleA (alpha).
enum HarmonicIndex : int {
    kEccentric = 0,
    kDeferent = 1,
    kEpicycle2 = 2,
    kEpicycleB = 3,
    kEpicycleA = 4,
};

struct OrbitSolution {
    std::array<HarmonicTerm, 5> terms;
    double alpha = 0.0;
    double phi0 = 0.0;
    double delta = 0.0;
    double eps = 0.0;
};

// Assemble the orbit from the coefficient pipeline (dual-path checked).
OrbitSolution solve(const ScaledConfig& cfg,
                    bool allow_near = false,
                    double guard = kDefaultResonanceGuard);

// Sum of coeff * e^{i f t} over the five terms, bridged to a plane vector.
Vec2 position(const OrbitSolution& sol, double t);
// Term-wise derivative: sum of i f coeff e^{i f t}.
Vec2 velocity(const OrbitSolution& sol, double t);

// The five harmonic vectors at time t; they sum to position(sol, t).
std::array<Vec2, 5> components(const OrbitSolution& sol, double t);

// --- Period analysis --------------------------------------------------------

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;  // > 0, gcd(|num|, den) == 1
};

// Continued-fraction rational approximation with a denominator cap.
// Returns nothing when no fraction with den <= max_den lies within tol of x.
std::optional<Rational> rationalize(double x, std::int64_t max_den,
                                    double tol = 1e-9);

// tau = (n/2) tau0, or aperiodic within the denominator cap.
struct PeriodResult {
    std::optional<std::int64_t> half_periods;  // n

    bool periodic() const { return half_periods.has_value(); }
    // tau in scaled time (tau0 = 2 pi).
    double tau() const;
};

// Least common multiple of the rotational periods {1, 1/2, 1/|alpha-2|,
// 1/|alpha|} in tau0 units, on the rationalized forms of alpha and alpha-2.
// A zero frequency contributes a constant harmonic and is dropped.
PeriodResult period(double alpha, std::int64_t max_den = 64);

// Early-closure candidates tau/p for each prime p dividing n, in scaled time.
std::vector<double> early_closure_candidates(std::int64_t n);

// Max of the five perturbation coefficient magnitudes
// |c_m1|, |c_0|, |c_p1|, |b_m1|, |b_p1| (the deferent's unit radius itself
// is excluded).  Decays like 1/alpha for large |alpha|.
double limit_check(double alpha_large, double eps);

} // namespace epicycle

#endif
