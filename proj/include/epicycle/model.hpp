#ifndef EPICYCLE_MODEL_HPP
#define EPICYCLE_MODEL_HPP

#include "epicycle/clifford.hpp"

// Problem configuration and the unperturbed circular orbit.  Everything
// downstream of scale() works in scaled units: r0 = 1, omega0 = 1, time in
// 1/omega0, forcing strength eps = q a / (m omega0^2 r0).

namespace epicycle {

// Physical atom parameters (any consistent unit system).
struct AtomConfig {
    double k;     // electrostatic force constant
    double q;     // charge magnitude
    double m;     // electron mass
    double r0;    // orbit radius
    double phi0;  // initial rotational phase [rad]
};

// Driving field parameters.
struct LightConfig {
    double a;      // electric field amplitude, >= 0
    double delta;  // phase [rad]
    double omega;  // angular frequency
};

// Dimensionless problem statement.  eps << 1 is the validity regime;
// eps > 0.1 merely warrants a warning (see exceeds_perturbative_regime).
struct ScaledConfig {
    double alpha;  // omega / omega0
    double eps;    // q a / (m omega0^2 r0)
    double phi0;   // [rad], kept unreduced
    double delta;  // [rad], kept unreduced
};

// Angular frequency of the circular orbit, sqrt(k q^2 / (m r0^3)).
// Throws NonPositiveParameterError if any of k, q, m, r0 is <= 0.
double kepler_frequency(const AtomConfig& atom);

// Nondimensionalize an (atom, light) pair.
ScaledConfig scale(const AtomConfig& atom, const LightConfig& light);

inline bool exceeds_perturbative_regime(const ScaledConfig& cfg) {
    return cfg.eps > 0.1;
}

// Circular orbit (cos(t + phi0), sin(t + phi0)) in scaled units.
Vec2 unperturbed_position(const ScaledConfig& cfg, double t);
Vec2 unperturbed_velocity(const ScaledConfig& cfg, double t);

// Relative-frequency shorthand and the conjugate ratio 2 - alpha, which
// spans the same five-harmonic basis.
inline double alpha_k(double alpha, int k) { return alpha - static_cast<double>(k); }
inline double conjugate_ratio(double alpha) { return 2.0 - alpha; }

} // namespace epicycle

#endif
