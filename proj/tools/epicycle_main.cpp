// Command-line surface: coefficient tables, orbit sampling, per-harmonic
// decomposition, period analysis, oracle comparison, and parameter sweeps.
// Numeric output is decimal with 17 significant digits so downstream
// comparisons are bit-faithful; identical invocations produce byte-identical
// CSV/JSON.  A manifest (<output>.manifest.json) is written beside every file
// output and can be replayed with --from-manifest.

#include <algorithm>
#include <clocale>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "epicycle/coefficients.hpp"
#include "epicycle/model.hpp"
#include "epicycle/oracle.hpp"
#include "epicycle/orbit.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kExitUsage = 1;
constexpr int kExitResonant = 2;
constexpr int kExitNumerical = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double resonance_guard_from_env() {
    const char* raw = std::getenv("EPICYCLE_GUARD");
    if (!raw) return epicycle::kDefaultResonanceGuard;
    char* end = nullptr;
    const double v = std::strtod(raw, &end);
    if (end == raw || !(v > 0.0) || !std::isfinite(v)) {
        std::cerr << "warning: ignoring invalid EPICYCLE_GUARD value\n";
        return epicycle::kDefaultResonanceGuard;
    }
    return v;
}

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

// --- shared configuration flags ---------------------------------------------

struct ConfigFlags {
    // scaled group
    double alpha = 0.0;
    double eps = 0.0;
    // SI group
    double k = 0.0, q = 0.0, m = 0.0, r0 = 0.0, a = 0.0, omega = 0.0;
    // shared
    double phi0 = 0.0;
    double delta = 0.0;
    bool degrees = false;
    bool allow_near = false;
    std::string output;

    CLI::Option* alpha_opt = nullptr;
    std::vector<CLI::Option*> si_opts;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f, bool needs_eps = true) {
    f.alpha_opt = cmd->add_option("--alpha", f.alpha, "frequency ratio omega/omega0");
    CLI::Option* eps_opt = nullptr;
    if (needs_eps) {
        eps_opt = cmd->add_option("--eps", f.eps,
                                  "forcing strength q a/(m omega0^2 r0)");
    }
    auto* k_opt = cmd->add_option("--k", f.k, "electrostatic force constant (SI group)");
    auto* q_opt = cmd->add_option("--q", f.q, "charge magnitude (SI group)");
    auto* m_opt = cmd->add_option("--m", f.m, "electron mass (SI group)");
    auto* r0_opt = cmd->add_option("--r0", f.r0, "orbit radius (SI group)");
    auto* a_opt = cmd->add_option("--a", f.a, "field amplitude (SI group)");
    auto* w_opt = cmd->add_option("--omega", f.omega, "light angular frequency (SI group)");
    f.si_opts = {k_opt, q_opt, m_opt, r0_opt, a_opt, w_opt};
    for (CLI::Option* si : f.si_opts) {
        si->excludes(f.alpha_opt);
        if (eps_opt) si->excludes(eps_opt);
    }
    k_opt->needs(q_opt, m_opt, r0_opt, w_opt, a_opt);
    q_opt->needs(k_opt);
    m_opt->needs(k_opt);
    r0_opt->needs(k_opt);
    a_opt->needs(k_opt);
    w_opt->needs(k_opt);
    cmd->add_option("--phi0", f.phi0, "initial electron phase");
    cmd->add_option("--delta", f.delta, "field phase");
    cmd->add_flag("--degrees", f.degrees, "interpret angles in degrees");
    cmd->add_flag("--allow-near-resonant", f.allow_near,
                  "proceed inside the resonance guard band");
    cmd->add_option("--output,-o", f.output,
                    "write to this file (plus <file>.manifest.json)");
}

epicycle::ScaledConfig resolve_config(const ConfigFlags& f) {
    const double to_rad = f.degrees ? M_PI / 180.0 : 1.0;
    epicycle::ScaledConfig cfg;
    const bool si_mode = !f.si_opts.empty() && f.si_opts.front()->count() > 0;
    if (si_mode) {
        const epicycle::AtomConfig atom{f.k, f.q, f.m, f.r0, f.phi0 * to_rad};
        const epicycle::LightConfig light{f.a, f.delta * to_rad, f.omega};
        cfg = epicycle::scale(atom, light);
    } else {
        if (f.alpha_opt->count() == 0) {
            throw UsageError("missing --alpha (or the SI flag group)");
        }
        cfg = {f.alpha, f.eps, f.phi0 * to_rad, f.delta * to_rad};
    }
    if (epicycle::exceeds_perturbative_regime(cfg)) {
        std::cerr << "warning: eps = " << fmt17(cfg.eps)
                  << " exceeds the perturbative regime (eps <= 0.1)\n";
    }
    return cfg;
}

// --- output plumbing ---------------------------------------------------------

void write_manifest(const std::string& output_path, const std::string& command,
                    const nlohmann::ordered_json& params) {
    nlohmann::ordered_json manifest;
    manifest["command"] = command;
    manifest["version"] = kVersion;
    manifest["timestamp"] = iso_timestamp();
    manifest["parameters"] = params;
    std::ofstream out(output_path + ".manifest.json");
    out << manifest.dump(2) << "\n";
}

void emit(const std::string& output_path, const std::string& content,
          const std::string& command, const nlohmann::ordered_json& params) {
    if (output_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw epicycle::Error("cannot open output file: " + output_path);
    out << content;
    out.close();
    write_manifest(output_path, command, params);
}

nlohmann::ordered_json config_params(const epicycle::ScaledConfig& cfg,
                                     bool allow_near, const std::string& output) {
    nlohmann::ordered_json p;
    p["alpha"] = cfg.alpha;
    p["eps"] = cfg.eps;
    p["phi0"] = cfg.phi0;
    p["delta"] = cfg.delta;
    p["allow_near_resonant"] = allow_near;
    p["guard"] = resonance_guard_from_env();
    p["output"] = output;
    return p;
}

// --- coeffs ------------------------------------------------------------------

std::string resonance_label(const epicycle::Resonance& r) {
    switch (r.kind) {
        case epicycle::Resonance::Kind::Resonant:
            return "resonant (ratio " + std::to_string(r.which) + ")";
        case epicycle::Resonance::Kind::NearResonant:
            return "near-resonant (ratio " + std::to_string(r.which) +
                   ", distance " + fmt17(r.distance) + ")";
        default:
            return "non-resonant";
    }
}

int run_coeffs(const epicycle::ScaledConfig& cfg, bool allow_near,
               const std::string& output) {
    const double guard = resonance_guard_from_env();
    const epicycle::CoeffSet c = epicycle::coefficient_set(cfg, allow_near, guard);
    const epicycle::ResidualReport rep = epicycle::residuals(c, cfg);

    std::ostringstream os;
    os << "alpha " << fmt17(cfg.alpha) << "\n"
       << "eps " << fmt17(cfg.eps) << "\n"
       << "phi0 " << fmt17(cfg.phi0) << "\n"
       << "delta " << fmt17(cfg.delta) << "\n"
       << "resonance " << resonance_label(epicycle::classify(cfg.alpha, guard)) << "\n"
       << "coefficient re im magnitude phase\n";
    const struct { const char* name; epicycle::ComplexAmp v; } rows[] = {
        {"b_m1", c.b_m1}, {"b_p1", c.b_p1},
        {"c_m1", c.c_m1}, {"c_0", c.c_0}, {"c_p1", c.c_p1},
    };
    for (const auto& row : rows) {
        os << row.name << " " << fmt17(row.v.re) << " " << fmt17(row.v.im) << " "
           << fmt17(epicycle::abs(row.v)) << " " << fmt17(epicycle::arg(row.v)) << "\n";
    }
    os << "residual particular_m1 " << fmt17(rep.particular_m1) << "\n"
       << "residual particular_p1 " << fmt17(rep.particular_p1) << "\n"
       << "residual homogeneous_m1 " << fmt17(rep.homogeneous_m1) << "\n"
       << "residual homogeneous_p1 " << fmt17(rep.homogeneous_p1) << "\n"
       << "residual boundary_position " << fmt17(rep.boundary_position) << "\n"
       << "residual boundary_velocity " << fmt17(rep.boundary_velocity) << "\n"
       << "residual alpha_identity " << fmt17(rep.alpha_identity) << "\n"
       << "residual dc_k0 (reported only) " << fmt17(rep.dc_k0) << "\n";

    emit(output, os.str(), "coeffs", config_params(cfg, allow_near, output));
    return 0;
}

// --- orbit -------------------------------------------------------------------

int run_orbit(const epicycle::ScaledConfig& cfg, bool allow_near, double t_end,
              long long samples, bool velocities, bool decompose,
              const std::string& output) {
    const double guard = resonance_guard_from_env();
    const epicycle::OrbitSolution sol = epicycle::solve(cfg, allow_near, guard);

    std::ostringstream os;
    os << "t,x,y";
    if (velocities) os << ",vx,vy";
    if (decompose) os << ",x0,y0,x1,y1,x2,y2,xB,yB,xA,yA";
    os << "\n";
    for (long long i = 0; i < samples; ++i) {
        const double t =
            samples > 1 ? t_end * static_cast<double>(i) / static_cast<double>(samples - 1)
                        : 0.0;
        const epicycle::Vec2 r = epicycle::position(sol, t);
        os << fmt17(t) << "," << fmt17(r.x) << "," << fmt17(r.y);
        if (velocities) {
            const epicycle::Vec2 v = epicycle::velocity(sol, t);
            os << "," << fmt17(v.x) << "," << fmt17(v.y);
        }
        if (decompose) {
            for (const epicycle::Vec2& part : epicycle::components(sol, t)) {
                os << "," << fmt17(part.x) << "," << fmt17(part.y);
            }
        }
        os << "\n";
    }

    nlohmann::ordered_json params = config_params(cfg, allow_near, output);
    params["t_end"] = t_end;
    params["samples"] = samples;
    params["velocities"] = velocities;
    params["decompose"] = decompose;
    emit(output, os.str(), "orbit", params);
    return 0;
}

// --- period ------------------------------------------------------------------

int run_period(double alpha, long long max_den, const std::string& output) {
    const epicycle::PeriodResult p = epicycle::period(alpha, max_den);
    std::ostringstream os;
    if (p.periodic()) {
        os << "tau/tau0 = " << *p.half_periods << "/2\n";
    } else {
        os << "aperiodic (denominator cap " << max_den << ")\n";
    }
    nlohmann::ordered_json params;
    params["alpha"] = alpha;
    params["max_den"] = max_den;
    params["output"] = output;
    emit(output, os.str(), "period", params);
    return 0;
}

// --- compare -----------------------------------------------------------------

int run_compare(const epicycle::ScaledConfig& cfg, bool allow_near,
                const std::string& mode, double dt, double t_end,
                const std::string& output) {
    const double guard = resonance_guard_from_env();
    const epicycle::OrbitSolution sol = epicycle::solve(cfg, allow_near, guard);
    const epicycle::IntegratorSettings settings{dt, t_end};
    const epicycle::Trajectory traj = mode == "linearized"
                                          ? epicycle::integrate_linearized(cfg, settings)
                                          : epicycle::integrate_full(cfg, settings);
    const epicycle::DeviationReport rep = epicycle::compare(sol, traj);

    std::ostringstream os;
    os << "{\n"
       << "  \"mode\": \"" << mode << "\",\n"
       << "  \"alpha\": " << fmt17(cfg.alpha) << ",\n"
       << "  \"eps\": " << fmt17(cfg.eps) << ",\n"
       << "  \"phi0\": " << fmt17(cfg.phi0) << ",\n"
       << "  \"delta\": " << fmt17(cfg.delta) << ",\n"
       << "  \"dt\": " << fmt17(dt) << ",\n"
       << "  \"t_end\": " << fmt17(t_end) << ",\n"
       << "  \"max_dev\": " << fmt17(rep.max_dev) << ",\n"
       << "  \"rms_dev\": " << fmt17(rep.rms_dev) << ",\n"
       << "  \"dev_over_eps\": "
       << (rep.dev_over_eps ? fmt17(*rep.dev_over_eps) : "null") << ",\n"
       << "  \"dev_over_eps2\": "
       << (rep.dev_over_eps2 ? fmt17(*rep.dev_over_eps2) : "null") << "\n"
       << "}\n";

    nlohmann::ordered_json params = config_params(cfg, allow_near, output);
    params["mode"] = mode;
    params["dt"] = dt;
    params["t_end"] = t_end;
    emit(output, os.str(), "compare", params);
    return 0;
}

// --- sweep -------------------------------------------------------------------

int run_sweep(double alpha_min, double alpha_max, long long steps,
              const epicycle::ScaledConfig& base, bool allow_near,
              long long max_den, const std::string& output) {
    const double guard = resonance_guard_from_env();
    std::ostringstream os;
    os << "alpha,status,b_m1_mag,b_p1_mag,c_m1_mag,c_0_mag,c_p1_mag,period_n\n";
    for (long long i = 0; i < steps; ++i) {
        const double alpha =
            steps > 1
                ? alpha_min + (alpha_max - alpha_min) * static_cast<double>(i) /
                                  static_cast<double>(steps - 1)
                : alpha_min;
        const epicycle::Resonance res = epicycle::classify(alpha, guard);
        const bool skip = res.resonant() || (res.near_resonant() && !allow_near);
        os << fmt17(alpha) << ",";
        if (skip) {
            os << "skipped-resonant,,,,,,\n";
            continue;
        }
        os << (res.near_resonant() ? "near-resonant" : "ok");
        const epicycle::ScaledConfig cfg{alpha, base.eps, base.phi0, base.delta};
        const epicycle::CoeffSet c = epicycle::coefficient_set(cfg, true, guard);
        for (const epicycle::ComplexAmp& v : {c.b_m1, c.b_p1, c.c_m1, c.c_0, c.c_p1}) {
            os << "," << fmt17(epicycle::abs(v));
        }
        const epicycle::PeriodResult p = epicycle::period(alpha, max_den);
        if (p.periodic()) {
            os << "," << *p.half_periods << "\n";
        } else {
            os << ",aperiodic\n";
        }
    }

    nlohmann::ordered_json params = config_params(base, allow_near, output);
    params.erase("alpha");
    params["alpha_min"] = alpha_min;
    params["alpha_max"] = alpha_max;
    params["steps"] = steps;
    params["max_den"] = max_den;
    emit(output, os.str(), "sweep", params);
    return 0;
}

// --- manifest replay ---------------------------------------------------------

int run_from_manifest(const std::string& path, const std::string& output_override) {
    std::ifstream in(path);
    if (!in) throw epicycle::Error("cannot open manifest: " + path);
    nlohmann::json manifest;
    in >> manifest;
    const std::string command = manifest.at("command");
    const nlohmann::json& p = manifest.at("parameters");
    const std::string output =
        output_override.empty() ? p.value("output", std::string{}) : output_override;

    auto cfg = [&]() -> epicycle::ScaledConfig {
        return {p.at("alpha").get<double>(), p.at("eps").get<double>(),
                p.at("phi0").get<double>(), p.at("delta").get<double>()};
    };
    auto allow_near = [&]() { return p.value("allow_near_resonant", false); };

    if (command == "coeffs") {
        return run_coeffs(cfg(), allow_near(), output);
    }
    if (command == "orbit") {
        return run_orbit(cfg(), allow_near(), p.at("t_end").get<double>(),
                         p.at("samples").get<long long>(), p.value("velocities", false),
                         p.value("decompose", false), output);
    }
    if (command == "period") {
        return run_period(p.at("alpha").get<double>(),
                          p.at("max_den").get<long long>(), output);
    }
    if (command == "compare") {
        return run_compare(cfg(), allow_near(), p.at("mode").get<std::string>(),
                           p.at("dt").get<double>(), p.at("t_end").get<double>(), output);
    }
    if (command == "sweep") {
        const epicycle::ScaledConfig base{0.0, p.at("eps").get<double>(),
                                          p.at("phi0").get<double>(),
                                          p.at("delta").get<double>()};
        return run_sweep(p.at("alpha_min").get<double>(),
                         p.at("alpha_max").get<double>(),
                         p.at("steps").get<long long>(), base, allow_near(),
                         p.at("max_den").get<long long>(), output);
    }
    throw epicycle::Error("unknown command in manifest: " + command);
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");

    CLI::App app{"Analytic five-harmonic electron orbits under circularly "
                 "polarized light, with a numerical cross-check"};
    app.set_version_flag("--version", std::string("epicycle ") + kVersion);
    app.require_subcommand(0, 1);

    std::string manifest_path, manifest_output;
    app.add_option("--from-manifest", manifest_path,
                   "re-run a command recorded in a manifest file");
    app.add_option("--output,-o", manifest_output,
                   "output override when using --from-manifest");

    // coeffs
    auto* coeffs_cmd = app.add_subcommand(
        "coeffs", "coefficient table, resonance classification and residuals");
    ConfigFlags coeffs_flags;
    add_config_flags(coeffs_cmd, coeffs_flags);

    // orbit
    auto* orbit_cmd = app.add_subcommand("orbit", "sample the analytic orbit as CSV");
    ConfigFlags orbit_flags;
    add_config_flags(orbit_cmd, orbit_flags);
    double orbit_t_end = 4.0 * M_PI;
    long long orbit_samples = 0;  // 0 = auto: 2048 rows per tau0
    bool orbit_velocities = false, orbit_decompose = false;
    orbit_cmd->add_option("--t-end", orbit_t_end, "end of the sampling window")
        ->check(CLI::PositiveNumber);
    orbit_cmd->add_option("--samples", orbit_samples,
                          "number of CSV rows (default: 2048 per tau0)")
        ->check(CLI::Range(1LL, 100000000LL));
    orbit_cmd->add_flag("--velocities", orbit_velocities, "append vx,vy columns");
    orbit_cmd->add_flag("--decompose", orbit_decompose,
                        "append the five per-harmonic component columns");

    // period
    auto* period_cmd = app.add_subcommand("period", "orbit period as a rational n/2");
    double period_alpha = 0.0;
    long long period_max_den = 64;
    std::string period_output;
    period_cmd->add_option("--alpha", period_alpha, "frequency ratio")->required();
    period_cmd->add_option("--max-den", period_max_den, "denominator cap")
        ->check(CLI::Range(1LL, 1000000LL));
    period_cmd->add_option("--output,-o", period_output, "write to this file");

    // compare
    auto* compare_cmd = app.add_subcommand(
        "compare", "deviation between the analytic orbit and an RK4 run");
    ConfigFlags compare_flags;
    add_config_flags(compare_cmd, compare_flags);
    std::string compare_mode = "full";
    double compare_dt = 1e-3, compare_t_end = 4.0 * M_PI;
    compare_cmd->add_option("--mode", compare_mode, "full | linearized")
        ->check(CLI::IsMember({"full", "linearized"}));
    compare_cmd->add_option("--dt", compare_dt, "integrator step (0, 1e-2]")
        ->check(CLI::Range(1e-12, 1e-2));
    compare_cmd->add_option("--t-end", compare_t_end, "integration window")
        ->check(CLI::PositiveNumber);

    // sweep (alpha comes from the range; only the scaled flags apply)
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "per-alpha coefficient magnitudes and period over a range");
    double sweep_min = 0.0, sweep_max = 0.0, sweep_eps = 0.0;
    double sweep_phi0 = 0.0, sweep_delta = 0.0;
    bool sweep_degrees = false, sweep_allow_near = false;
    std::string sweep_output;
    long long sweep_steps = 0, sweep_max_den = 64;
    sweep_cmd->add_option("--alpha-min", sweep_min, "range start")->required();
    sweep_cmd->add_option("--alpha-max", sweep_max, "range end")->required();
    sweep_cmd->add_option("--steps", sweep_steps, "number of rows")
        ->required()
        ->check(CLI::Range(1LL, 10000000LL));
    sweep_cmd->add_option("--eps", sweep_eps, "forcing strength");
    sweep_cmd->add_option("--phi0", sweep_phi0, "initial electron phase");
    sweep_cmd->add_option("--delta", sweep_delta, "field phase");
    sweep_cmd->add_flag("--degrees", sweep_degrees, "interpret angles in degrees");
    sweep_cmd->add_flag("--allow-near-resonant", sweep_allow_near,
                        "compute rows inside the guard band");
    sweep_cmd->add_option("--output,-o", sweep_output, "write to this file");
    sweep_cmd->add_option("--max-den", sweep_max_den, "period denominator cap")
        ->check(CLI::Range(1LL, 1000000LL));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (!manifest_path.empty()) {
            return run_from_manifest(manifest_path, manifest_output);
        }
        if (coeffs_cmd->parsed()) {
            return run_coeffs(resolve_config(coeffs_flags), coeffs_flags.allow_near,
                              coeffs_flags.output);
        }
        if (orbit_cmd->parsed()) {
            const long long samples =
                orbit_samples > 0
                    ? orbit_samples
                    : std::max(2LL, std::llround(2048.0 * orbit_t_end / (2.0 * M_PI)));
            return run_orbit(resolve_config(orbit_flags), orbit_flags.allow_near,
                             orbit_t_end, samples, orbit_velocities,
                             orbit_decompose, orbit_flags.output);
        }
        if (period_cmd->parsed()) {
            return run_period(period_alpha, period_max_den, period_output);
        }
        if (compare_cmd->parsed()) {
            return run_compare(resolve_config(compare_flags), compare_flags.allow_near,
                               compare_mode, compare_dt, compare_t_end,
                               compare_flags.output);
        }
        if (sweep_cmd->parsed()) {
            const double to_rad = sweep_degrees ? M_PI / 180.0 : 1.0;
            const epicycle::ScaledConfig base{0.0, sweep_eps, sweep_phi0 * to_rad,
                                              sweep_delta * to_rad};
            return run_sweep(sweep_min, sweep_max, sweep_steps, base,
                             sweep_allow_near, sweep_max_den, sweep_output);
        }
        std::cerr << app.help();
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const epicycle::ResonantDivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResonant;
    } catch (const epicycle::NearResonanceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResonant;
    } catch (const epicycle::SingularRadiusError& e) {
        std::cerr << "error: " << e.what()
                  << "\nsuggestion: reduce --t-end or move --alpha away from "
                     "the resonant ratios {0, 1, 2}\n";
        return kExitNumerical;
    } catch (const epicycle::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
