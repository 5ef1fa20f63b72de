#ifndef EPICYCLE_CLIFFORD_HPP
#define EPICYCLE_CLIFFORD_HPP

#include <cmath>

#include "epicycle/errors.hpp"

// Minimal Cl(2,0) kernel: the geometric product on the full 4-component
// multivector, the even subalgebra (scalar + bivector, isomorphic to the
// complex numbers), plane vectors, and rotor rotations.  All types are
// immutable values and all operations are pure functions.

namespace epicycle {

// 2D vector, components along the orthonormal basis e1, e2.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Even-subalgebra element s + b*i where i = e1 e2.  Behaves exactly like a
// complex number; kept as its own type because it carries orientation
// semantics (the bivector part) distinct from a plane vector.
struct ComplexAmp {
    double re = 0.0;
    double im = 0.0;
};

// General element of Cl(2,0): s + x e1 + y e2 + b i.
struct Multivector {
    double s = 0.0;
    double x = 0.0;
    double y = 0.0;
    double b = 0.0;
};

inline constexpr Multivector kScalarOne{1.0, 0.0, 0.0, 0.0};
inline constexpr Multivector kE1{0.0, 1.0, 0.0, 0.0};
inline constexpr Multivector kE2{0.0, 0.0, 1.0, 0.0};
inline constexpr Multivector kUnitBivector{0.0, 0.0, 0.0, 1.0};

// --- Multivector algebra -------------------------------------------------

inline Multivector operator+(const Multivector& a, const Multivector& b) {
    return {a.s + b.s, a.x + b.x, a.y + b.y, a.b + b.b};
}
inline Multivector operator-(const Multivector& a, const Multivector& b) {
    return {a.s - b.s, a.x - b.x, a.y - b.y, a.b - b.b};
}
inline Multivector operator*(double c, const Multivector& a) {
    return {c * a.s, c * a.x, c * a.y, c * a.b};
}

// Geometric product.  Bilinear extension of e1^2 = e2^2 = 1,
// e1 e2 = -e2 e1 = i.
inline Multivector gp(const Multivector& a, const Multivector& b) {
    return {
        a.s * b.s + a.x * b.x + a.y * b.y - a.b * b.b,
        a.s * b.x + a.x * b.s - a.y * b.b + a.b * b.y,
        a.s * b.y + a.x * b.b + a.y * b.s - a.b * b.x,
        a.s * b.b + a.x * b.y - a.y * b.x + a.b * b.s,
    };
}

// Grade projections.  Idempotent; the four of them sum to the identity.
inline Multivector grade0(const Multivector& a) { return {a.s, 0, 0, 0}; }
inline Multivector grade1(const Multivector& a) { return {0, a.x, a.y, 0}; }
inline Multivector grade2(const Multivector& a) { return {0, 0, 0, a.b}; }

// --- Vector products ------------------------------------------------------

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

// Bivector coefficient of the outer product a ^ b.
inline double wedge(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double c, Vec2 a) { return {c * a.x, c * a.y}; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// --- Complex amplitudes ---------------------------------------------------

inline ComplexAmp operator+(ComplexAmp a, ComplexAmp b) { return {a.re + b.re, a.im + b.im}; }
inline ComplexAmp operator-(ComplexAmp a, ComplexAmp b) { return {a.re - b.re, a.im - b.im}; }
inline ComplexAmp operator-(ComplexAmp a) { return {-a.re, -a.im}; }
inline ComplexAmp operator*(ComplexAmp a, ComplexAmp b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline ComplexAmp operator*(double c, ComplexAmp a) { return {c * a.re, c * a.im}; }
inline ComplexAmp conj(ComplexAmp a) { return {a.re, -a.im}; }
inline double abs(ComplexAmp a) { return std::hypot(a.re, a.im); }
inline double arg(ComplexAmp a) { return std::atan2(a.im, a.re); }

// --- Vector <-> complex bridging -----------------------------------------
// A plane vector factors as v = e1 c with c = x + y i; the map is exact in
// both directions.

inline ComplexAmp complex_of(Vec2 v) { return {v.x, v.y}; }
inline Vec2 vec_of(ComplexAmp c) { return {c.re, c.im}; }

inline Multivector embed(ComplexAmp c) { return {c.re, 0, 0, c.im}; }
inline Multivector embed(Vec2 v) { return {0, v.x, v.y, 0}; }

// Extraction back out of the full algebra.  A mixed-grade element is a
// contract violation and throws; nothing is silently projected away.
inline ComplexAmp even_of(const Multivector& a) {
    if (a.x != 0.0 || a.y != 0.0) throw Error("mixed-grade element is not even");
    return {a.s, a.b};
}
inline Vec2 vector_of(const Multivector& a) {
    if (a.s != 0.0 || a.b != 0.0) throw Error("mixed-grade element is not a vector");
    return {a.x, a.y};
}

// --- Rotors ----------------------------------------------------------------

// Euler rotor e^{i phi} = cos phi + i sin phi.
inline ComplexAmp rotor(double phi) { return {std::cos(phi), std::sin(phi)}; }

// Counterclockwise rotation by phi: vector of (complex_of(v) * e^{i phi}).
inline Vec2 rotate(Vec2 v, double phi) {
    return vec_of(complex_of(v) * rotor(phi));
}

// --- Inverses ---------------------------------------------------------------

inline Vec2 inverse(Vec2 a) {
    const double n2 = dot(a, a);
    if (n2 == 0.0) throw ZeroNormError{};
    return {a.x / n2, a.y / n2};
}

inline ComplexAmp inverse(ComplexAmp a) {
    const double n2 = a.re * a.re + a.im * a.im;
    if (n2 == 0.0) throw ZeroNormError{};
    return {a.re / n2, -a.im / n2};
}

} // namespace epicycle

#endif
