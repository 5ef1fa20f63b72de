#ifndef EPICYCLE_ERRORS_HPP
#define EPICYCLE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace epicycle {

// Base class for all domain errors thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Inverse of a zero-norm vector or complex amplitude.
struct ZeroNormError : Error {
    ZeroNormError() : Error("inverse of zero-norm element") {}
};

// Non-positive k, q, m or r0 in an atom configuration.
struct NonPositiveParameterError : Error {
    explicit NonPositiveParameterError(const std::string& which)
        : Error("parameter must be positive: " + which) {}
};

// Frequency ratio sits exactly on a resonant value {0, 1, 2}.
struct ResonantDivergenceError : Error {
    explicit ResonantDivergenceError(int which)
        : Error("resonant ratio " + std::to_string(which) +
                ": first-order coefficients diverge"),
          ratio(which) {}
    int ratio;
};

// Frequency ratio is inside the guard band around a resonance and the
// caller did not pass the explicit override.
struct NearResonanceError : Error {
    NearResonanceError(int which, double distance)
        : Error("frequency ratio within " + std::to_string(distance) +
                " of resonant ratio " + std::to_string(which) +
                "; pass the near-resonant override to proceed"),
          ratio(which), dist(distance) {}
    int ratio;
    double dist;
};

// Numeric trajectory dipped below the singular-radius floor.
struct SingularRadiusError : Error {
    explicit SingularRadiusError(double t)
        : Error("orbit radius fell below 1e-6 r0 at t = " + std::to_string(t) +
                " (collision with the proton; near-resonant divergent runs are "
                "expected to do this)"),
          time(t) {}
    double time;
};

// compare() called with a trajectory that does not cover a usable window.
struct WindowMismatchError : Error {
    WindowMismatchError() : Error("trajectory does not cover the comparison window") {}
};

} // namespace epicycle

#endif
