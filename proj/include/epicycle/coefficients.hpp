#ifndef EPICYCLE_COEFFICIENTS_HPP
#define EPICYCLE_COEFFICIENTS_HPP

#include <array>
#include <utility>

#include "epicycle/model.hpp"

// Fourier coefficients of the first-order orbit.  The forced response pair
// (b_m1, b_p1) lives at frequencies -+(alpha - 1) in the co-rotating frame;
// the free pair plus DC offset (c_m1, c_0, c_p1) restore continuity of
// position and velocity at switch-on.  All coefficients are in units of r0.
//
// Convention used throughout: conjugation terms carry the factor
// e^{+2 phi0 i}.  That sign is forced jointly by the co-rotating Fourier
// relations at k = +-1 and by the switch-on boundary conditions; with the
// opposite sign the Copernican relation c_p1 = -(1/3) e^{2 phi0 i} conj(c_m1)
// fails for phi0 not a multiple of pi/2.

namespace epicycle {

inline constexpr double kDefaultResonanceGuard = 1e-6;

struct Resonance {
    enum class Kind { NonResonant, NearResonant, Resonant };
    Kind kind = Kind::NonResonant;
    int which = 0;          // the resonant ratio 0, 1 or 2 (valid unless NonResonant)
    double distance = 0.0;  // |alpha - which| (valid for NearResonant)

    bool resonant() const { return kind == Kind::Resonant; }
    bool near_resonant() const { return kind == Kind::NearResonant; }
};

// Resonant iff alpha equals 0, 1 or 2 exactly; NearResonant within guard.
Resonance classify(double alpha, double guard = kDefaultResonanceGuard);

struct CoeffSet {
    ComplexAmp b_m1, b_p1;        // forced pair
    ComplexAmp c_m1, c_0, c_p1;   // free pair + DC offset
};

// Forced coefficients:
//   b_m1 = eps * (-3/2) e^{2 phi0 i} e^{-i delta} / (a0 a1^2 a2)
//   b_p1 = eps * (a1 a3 + 3/2) e^{i delta} / (a0 a1^2 a2)
// with a_k = alpha - k.  Throws ResonantDivergenceError at alpha in {0,1,2};
// throws NearResonanceError inside the guard band unless allow_near.
std::pair<ComplexAmp, ComplexAmp> particular(const ScaledConfig& cfg,
                                             bool allow_near = false,
                                             double guard = kDefaultResonanceGuard);

// Free coefficients from the forced pair (closed forms in D = b_m1 - b_p1).
std::array<ComplexAmp, 3> homogeneous_from_b(ComplexAmp b_m1, ComplexAmp b_p1,
                                             double alpha, double phi0);

// Same coefficients evaluated from the fully expanded amplitude forms,
// without going through the forced pair.  Cross-checks the long expansion.
std::array<ComplexAmp, 3> homogeneous_direct(const ScaledConfig& cfg,
                                             bool allow_near = false,
                                             double guard = kDefaultResonanceGuard);

// c_p1 via the explicit 2x2 real determinant solve of
//   3 e^{2 phi0 i} conj(c_p1) + c_p1 = (alpha - 1)(b_m1 - b_p1).
// The system determinant is the constant -8 for every phi0 (asserted).
ComplexAmp c1_determinant_solve(ComplexAmp b_m1, ComplexAmp b_p1,
                                double alpha, double phi0);

// Full pipeline: particular + homogeneous_from_b, cross-checked against
// homogeneous_direct.  A relative mismatch above 1e-10 between the two
// computation paths aborts with a transcription-error diagnostic.
CoeffSet coefficient_set(const ScaledConfig& cfg,
                         bool allow_near = false,
                         double guard = kDefaultResonanceGuard);

// Relative substitution residuals of the defining relations.  Each entry is
// |lhs - rhs| divided by the largest magnitude among the terms of that
// relation (zero when every term vanishes).
struct ResidualReport {
    double particular_m1 = 0.0;     // forced relation at frequency -(alpha-1)
    double particular_p1 = 0.0;     // forced relation at frequency +(alpha-1)
    double homogeneous_m1 = 0.0;    // k = -1 Fourier relation
    double homogeneous_p1 = 0.0;    // k = +1 Fourier relation
    double boundary_position = 0.0; // t = 0 position sum
    double boundary_velocity = 0.0; // t = 0 velocity sum
    double alpha_identity = 0.0;    // scalar product identity at cfg.alpha
    // DC relation c_0 + e^{2 phi0 i} conj(c_0) = 0.  Reported only: the
    // boundary-derived c_0 does not satisfy it unless cos(delta - phi0) = 0,
    // and no constraint is asserted on it anywhere in the library.
    double dc_k0 = 0.0;

    // Largest of the checked entries (dc_k0 excluded).
    double max_checked() const;
};

ResidualReport residuals(const CoeffSet& coeffs, const ScaledConfig& cfg);

} // namespace epicycle

#endif
