#include "epicycle/oracle.hpp"

#include <cmath>

namespace epicycle {

namespace {

constexpr double kSingularRadius = 1e-6;

void validate(const IntegratorSettings& s) {
    if (!(s.dt > 0.0) || s.dt > 1e-2) throw Error("integrator dt must satisfy 0 < dt <= 1e-2");
    if (!(s.t_end > 0.0)) throw Error("integrator t_end must be positive");
    if (s.t_end / s.dt > 1e9) throw Error("integration window needs more than 1e9 steps");
}

State axpy(const State& y, double h, const State& k) {
    return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2], y[3] + h * k[3]};
}

} // namespace

std::int64_t IntegratorSettings::step_count() const {
    const std::int64_t n = static_cast<std::int64_t>(std::llround(t_end / dt));
    return n > 0 ? n : 1;
}

Trajectory integrate_state(const Derivative& rhs, const State& y0,
                           const IntegratorSettings& s, double singular_radius) {
    validate(s);
    const std::int64_t n = s.step_count();
    const double h = s.t_end / static_cast<double>(n);

    Trajectory traj;
    traj.times.reserve(n + 1);
    traj.positions.reserve(n + 1);
    traj.velocities.reserve(n + 1);

    State y = y0;
    State k1, k2, k3, k4;
    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.positions.push_back({y[0], y[1]});
        traj.velocities.push_back({y[2], y[3]});
    };
    record(0.0);
    for (std::int64_t i = 0; i < n; ++i) {
        const double t = s.t_end * static_cast<double>(i) / static_cast<double>(n);
        rhs(t, y, k1);
        rhs(t + 0.5 * h, axpy(y, 0.5 * h, k1), k2);
        rhs(t + 0.5 * h, axpy(y, 0.5 * h, k2), k3);
        const double t_next = s.t_end * static_cast<double>(i + 1) / static_cast<double>(n);
        rhs(t_next, axpy(y, h, k3), k4);
        for (int j = 0; j < 4; ++j) {
            y[j] += h / 6.0 * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j]);
        }
        if (singular_radius > 0.0 && std::hypot(y[0], y[1]) < singular_radius) {
            throw SingularRadiusError(t_next);
        }
        record(t_next);
    }
    return traj;
}

Trajectory integrate_full(const ScaledConfig& cfg, const IntegratorSettings& s) {
    const double alpha = cfg.alpha, delta = cfg.delta, eps = cfg.eps;
    const Derivative rhs = [alpha, delta, eps](double t, const State& y, State& dy) {
        const double r = std::hypot(y[0], y[1]);
        const double inv_r3 = 1.0 / (r * r * r);
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = -y[0] * inv_r3 - eps * std::cos(alpha * t + delta);
        dy[3] = -y[1] * inv_r3 - eps * std::sin(alpha * t + delta);
    };
    const State y0 = {std::cos(cfg.phi0), std::sin(cfg.phi0),
                      -std::sin(cfg.phi0), std::cos(cfg.phi0)};
    return integrate_state(rhs, y0, s, kSingularRadius);
}

Trajectory integrate_linearized(const ScaledConfig& cfg, const IntegratorSettings& s) {
    const double alpha = cfg.alpha, phi0 = cfg.phi0, delta = cfg.delta, eps = cfg.eps;
    const Derivative rhs = [alpha, phi0, delta, eps](double t, const State& y, State& dy) {
        const double cx = std::cos(t + phi0), cy = std::sin(t + phi0);
        const double radial = cx * y[0] + cy * y[1];  // r0 . r1, |r0| = 1
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = -(y[0] - 3.0 * radial * cx) - eps * std::cos(alpha * t + delta);
        dy[3] = -(y[1] - 3.0 * radial * cy) - eps * std::sin(alpha * t + delta);
    };
    Trajectory traj = integrate_state(rhs, {0.0, 0.0, 0.0, 0.0}, s);
    // Shift the perturbation back onto the circular orbit.
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        const double c = std::cos(t + phi0), sn = std::sin(t + phi0);
        traj.positions[i] = traj.positions[i] + Vec2{c, sn};
        traj.velocities[i] = traj.velocities[i] + Vec2{-sn, c};
    }
    return traj;
}

DeviationReport compare(const OrbitSolution& analytic, const Trajectory& numeric) {
    if (numeric.times.empty() || numeric.times.size() != numeric.positions.size()) {
        throw WindowMismatchError{};
    }
    DeviationReport report;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < numeric.times.size(); ++i) {
        const Vec2 ref = position(analytic, numeric.times[i]);
        const double dev = norm(numeric.positions[i] - ref);
        report.max_dev = std::max(report.max_dev, dev);
        sum_sq += dev * dev;
    }
    report.rms_dev = std::sqrt(sum_sq / static_cast<double>(numeric.times.size()));
    if (analytic.eps > 0.0) {
        report.dev_over_eps = report.max_dev / analytic.eps;
        report.dev_over_eps2 = report.max_dev / (analytic.eps * analytic.eps);
    }
    return report;
}

} // namespace epicycle
