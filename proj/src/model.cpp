#include "epicycle/model.hpp"

#include <cmath>

namespace epicycle {

double kepler_frequency(const AtomConfig& atom) {
    if (!(atom.k > 0.0)) throw NonPositiveParameterError("k");
    if (!(atom.q > 0.0)) throw NonPositiveParameterError("q");
    if (!(atom.m > 0.0)) throw NonPositiveParameterError("m");
    if (!(atom.r0 > 0.0)) throw NonPositiveParameterError("r0");
    return std::sqrt(atom.k * atom.q * atom.q / (atom.m * atom.r0 * atom.r0 * atom.r0));
}

ScaledConfig scale(const AtomConfig& atom, const LightConfig& light) {
    const double w0 = kepler_frequency(atom);
    ScaledConfig cfg;
    cfg.alpha = light.omega / w0;
    cfg.eps = atom.q * light.a / (atom.m * w0 * w0 * atom.r0);
    cfg.phi0 = atom.phi0;
    cfg.delta = light.delta;
    return cfg;
}

Vec2 unperturbed_position(const ScaledConfig& cfg, double t) {
    return {std::cos(t + cfg.phi0), std::sin(t + cfg.phi0)};
}

Vec2 unperturbed_velocity(const ScaledConfig& cfg, double t) {
    return {-std::sin(t + cfg.phi0), std::cos(t + cfg.phi0)};
}

} // namespace epicycle
