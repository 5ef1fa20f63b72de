#ifndef EPICYCLE_ORACLE_HPP
#define EPICYCLE_ORACLE_HPP

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "epicycle/orbit.hpp"

// Independent numerical ground truth: fixed-step classical RK4 on either the
// full nonlinear equation of motion or the linearized perturbation system.
// Integrations are single-threaded; independent runs may go in parallel.

namespace epicycle {

struct Trajectory {
    std::vector<double> times;     // strictly increasing, starts at 0
    std::vector<Vec2> positions;   // r0 units
    std::vector<Vec2> velocities;  // r0 omega0 units
};

struct IntegratorSettings {
    double dt = 1e-3;   // requested step, 0 < dt <= 1e-2
    double t_end = 0.0; // > 0

    // Steps actually taken: t_end / round(t_end / dt), so the grid lands
    // exactly on t_end.
    std::int64_t step_count() const;
};

// State layout for the integrator core: {x, y, vx, vy}.
using State = std::array<double, 4>;
using Derivative = std::function<void(double t, const State& y, State& dy)>;

// RK4 engine shared by both integrators.  If singular_radius > 0 the run
// aborts with SingularRadiusError as soon as hypot(x, y) < singular_radius.
Trajectory integrate_state(const Derivative& rhs, const State& y0,
                           const IntegratorSettings& s,
                           double singular_radius = 0.0);

// Full nonlinear motion r'' = -r/|r|^3 - eps (cos(alpha t + delta),
// sin(alpha t + delta)) from the circular state at t = 0.  Aborts with
// SingularRadiusError below 1e-6 r0.
Trajectory integrate_full(const ScaledConfig& cfg, const IntegratorSettings& s);

// First-order system r1'' = -[r1 - 3 (r0.r1) r0] - eps e(t) with r0(t) the
// unit circular orbit, integrated from r1 = r1' = 0.  The returned
// trajectory holds r0(t) + r1(t), directly comparable to the analytic orbit.
Trajectory integrate_linearized(const ScaledConfig& cfg, const IntegratorSettings& s);

struct DeviationReport {
    double max_dev = 0.0;
    double rms_dev = 0.0;
    std::optional<double> dev_over_eps;   // absent when eps == 0
    std::optional<double> dev_over_eps2;  // absent when eps == 0
};

// Position deviation between the analytic orbit and a numeric trajectory,
// evaluated at the trajectory's own sample times.
DeviationReport compare(const OrbitSolution& analytic, const Trajectory& numeric);

} // namespace epicycle

#endif
