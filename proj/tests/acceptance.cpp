// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                 run everything
//   acceptance --only NAME     run one criterion
//   acceptance --list          print the criterion names

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "socbec/dynamics.hpp"
#include "socbec/ground_state.hpp"
#include "socbec/io.hpp"
#include "socbec/observables.hpp"
#include "socbec/scenarios.hpp"

using namespace socbec;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    // Records one sub-check; the criterion passes only if all of them do.
    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        detail += (detail.empty() ? "" : "; ") + std::string(ok ? "" : "[x] ") + what;
    }
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buffer[256];
    std::snprintf(buffer, sizeof buffer, format, a, b, c);
    return buffer;
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

RunConfig scenario_config(Scenario scenario, const KeyValues& settings) {
    return parse_config("", settings, scenario);
}

std::string number(double v) { return format_real(v); }

// Mean spacing of interior local maxima of `values`; 0 when fewer than two.
double peak_period(const std::vector<double>& t, const std::vector<double>& values) {
    std::vector<double> peaks;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        if (values[i] > values[i - 1] && values[i] >= values[i + 1]) peaks.push_back(t[i]);
    }
    if (peaks.size() < 2) return 0.0;
    return (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
}

double variance(const std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return s / static_cast<double>(v.size());
}

std::vector<double> column(const Trajectory& traj, double TrajectoryRecord::*field) {
    std::vector<double> out;
    for (const auto& r : traj.records) out.push_back(r.*field);
    return out;
}

// ---------------------------------------------------------------------------

Outcome noninteracting_ground_state() {
    Outcome o;
    Stopwatch clock;
    const auto s = minimize_hermite(0.0);
    const double elapsed = clock.seconds();
    o.check(std::abs(s.result.energy - 0.5) < 1e-6, fmt("E/N = %.12f", s.result.energy));
    o.check(std::abs(s.result.width - 1.0) < 1e-6, fmt("w_gs = %.12f", s.result.width));
    o.check(elapsed < 1.0, fmt("%.3f s", elapsed));
    return o;
}

Outcome thomas_fermi_agreement() {
    Outcome o;
    Stopwatch clock;
    const double g1N = 40.0;
    const auto s = minimize_hermite(g1N);
    const double psi_0 = s.expansion.sample(*make_grid(-16, 16, 512))[256];
    const double w_tf = thomas_fermi_radius(g1N);
    const double tf_peak = 3.0 / (4.0 * w_tf);
    const double tf_width = w_tf * std::sqrt(0.4);
    const double elapsed = clock.seconds();
    const double peak_err = std::abs(psi_0 * psi_0 - tf_peak) / tf_peak;
    const double width_err = std::abs(s.result.width - tf_width) / tf_width;
    o.check(peak_err < 0.05, fmt("peak density %.5f vs TF %.5f (%.2f%%)", psi_0 * psi_0, tf_peak, 100 * peak_err));
    o.check(width_err < 0.10, fmt("width %.5f vs TF %.5f (%.2f%%)", s.result.width, tf_width, 100 * width_err));
    o.check(elapsed < 10.0, fmt("%.2f s", elapsed));
    return o;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

Outcome scaling_laws() {
    Outcome o;
    std::vector<double> lg, le, lw;
    for (double g1N : {100.0, 150.0, 220.0, 330.0, 470.0, 680.0, 1000.0}) {
        const auto s = minimize_hermite(g1N);
        lg.push_back(std::log(g1N));
        le.push_back(std::log(s.result.energy));
        lw.push_back(std::log(s.result.width));
    }
    const double se = fit_slope(lg, le);
    const double sw = fit_slope(lg, lw);
    o.check(std::abs(se - 2.0 / 3.0) < 0.03, fmt("energy slope %.4f", se));
    o.check(std::abs(sw - 1.0 / 3.0) < 0.03, fmt("width slope %.4f", sw));
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    const auto grid = make_grid(-16, 16, 512);
    for (double g1N : {0.0, 10.0, 20.0, 40.0, 60.0}) {
        const double e_h = minimize_hermite(g1N).result.energy;
        const double e_it = imaginary_time_ground_state(g1N, grid).energy;
        const double rel = std::abs(e_h - e_it) / e_h;
        o.check(rel < 1e-4, fmt("g1N=%g rel %.2e", g1N, rel));
    }
    return o;
}

Outcome free_expansion_purity() {
    Outcome o;
    Stopwatch clock;
    const double alpha = 0.2;
    std::map<double, double> purity_at_10;
    for (double g1N : {0.0, 10.0, 20.0}) {
        const auto c = scenario_config(Scenario::expand, {{"g1N", number(g1N)}, {"alpha", number(alpha)}});
        const Trajectory traj = simulate(c);
        o.check(traj.valid, fmt("g1N=%g run valid", g1N));
        if (g1N == 0.0) {
            double worst = 0.0;
            for (const auto& r : traj.records) worst = std::max(worst, std::abs(r.purity - analytic_free_purity(alpha, 1.0, r.t)));
            o.check(worst < 1e-3, fmt("g1N=0 max |P - exp(-2(at/w)^2)| = %.2e", worst));
        }
        purity_at_10[g1N] = traj.records.back().purity;
    }
    o.check(purity_at_10[10.0] < purity_at_10[0.0],
            fmt("P(10): g1N=10 %.3e < g1N=0 %.3e", purity_at_10[10.0], purity_at_10[0.0]));
    o.check(purity_at_10[20.0] < purity_at_10[0.0],
            fmt("P(10): g1N=20 %.3e < g1N=0 %.3e", purity_at_10[20.0], purity_at_10[0.0]));
    const double elapsed = clock.seconds();
    o.check(elapsed < 120.0, fmt("%.1f s", elapsed));
    return o;
}

Outcome anomalous_velocity() {
    Outcome o;
    const auto c = scenario_config(Scenario::expand, {{"g1N", "0"}, {"alpha", "0.2"}});
    const auto grid = make_grid(c.grid.x_min, c.grid.x_max, c.grid.n_points);
    SpinorField s = build_initial_state(grid, initial_profile(c, grid), c.particle_number, InitialPhase::plain, c.model.alpha);
    SplitStepper stepper(grid, c.model, {}, c.evolution.dt);
    const double h = 0.05;
    const auto steps = static_cast<std::size_t>(std::llround(h / c.evolution.dt));
    std::vector<double> up, down;
    for (int sample = 0; sample <= 20; ++sample) {
        up.push_back(component_mean_position(s, true));
        down.push_back(component_mean_position(s, false));
        for (std::size_t n = 0; n < steps; ++n) stepper.step(s, 0.0);
    }
    double worst_up = 0.0, worst_down = 0.0;
    for (std::size_t i = 1; i < up.size(); ++i) {
        worst_up = std::max(worst_up, std::abs((up[i] - up[i - 1]) / h - c.model.alpha));
        worst_down = std::max(worst_down, std::abs((down[i] - down[i - 1]) / h + c.model.alpha));
    }
    o.check(worst_up < 1e-4, fmt("max |v_up - alpha| = %.2e over t <= 1", worst_up));
    o.check(worst_down < 1e-4, fmt("max |v_down + alpha| = %.2e over t <= 1", worst_down));
    return o;
}

Outcome spin_dipole_frequency_criterion() {
    Outcome o;
    std::vector<double> omegas;
    for (double g1N : {10.0, 20.0, 60.0}) {
        const auto c = scenario_config(Scenario::trap, {{"g1N", number(g1N)},
                                                        {"alpha", "0.2"},
                                                        {"delta", "0"},
                                                        {"d0", "0"},
                                                        {"t_final", "150"},
                                                        {"sample_stride", "20"}});
        const Trajectory traj = simulate(c);
        const auto t = column(traj, &TrajectoryRecord::t);
        const double period_sx = peak_period(t, column(traj, &TrajectoryRecord::sx));
        const double period_xsz = peak_period(t, column(traj, &TrajectoryRecord::x_sz));
        const double omega_sx = 2 * std::numbers::pi / period_sx;
        const double omega_xsz = 2 * std::numbers::pi / period_xsz;
        omegas.push_back(omega_sx);
        const double ratio = omega_xsz / omega_sx;
        o.check(std::abs(ratio - 2.0) < 0.2,
                fmt("g1N=%g omega(x sz)/omega(sx) = %.3f (want 2)", g1N, ratio));
        if (g1N == 60.0) {
            const double target = *spin_dipole_frequency(g1N).asymptotic;
            o.check(std::abs(omega_sx - target) < 0.25 * target,
                    fmt("g1N=60 omega(sx) = %.4f vs %.4f", omega_sx, target));
        }
    }
    o.check(omegas[0] > omegas[1] && omegas[1] > omegas[2],
            fmt("omega(sx) decreasing: %.4f > %.4f > %.4f", omegas[0], omegas[1], omegas[2]));
    return o;
}

Outcome rabi_landmark() {
    Outcome o;
    Stopwatch clock;
    for (double g1N : {0.0, 10.0, 20.0}) {
        const auto c = scenario_config(Scenario::drive, {{"g1N", number(g1N)},
                                                         {"alpha", "0.1"},
                                                         {"delta", "0.1"},
                                                         {"d0", "2"},
                                                         {"init_phase", "plain"}});
        const RabiParameters rabi = rabi_parameters(c.model);
        const Trajectory traj = simulate(c);
        o.check(traj.valid, fmt("g1N=%g run valid", g1N));
        const auto it = std::min_element(traj.records.begin(), traj.records.end(),
                                          [](const auto& a, const auto& b) { return a.sx < b.sx; });
        const double rel = std::abs(it->t - rabi.T_sf) / rabi.T_sf;
        o.check(rel < 0.15, fmt("g1N=%g argmin sx at t = %.1f (T_sf %.1f)", g1N, it->t, rabi.T_sf));
        if (g1N == 0.0) {
            double worst = 0.0;
            for (const auto& r : traj.records) worst = std::max(worst, std::abs(r.sx - std::cos(rabi.omega_R * r.t)));
            o.check(worst < 0.15, fmt("g1N=0 sup |sx - cos(Omega_R t)| = %.4f", worst));
        }
    }
    const double elapsed = clock.seconds();
    o.check(elapsed < 300.0, fmt("%.1f s", elapsed));
    return o;
}

Trajectory collapse_run(const char* phase) {
    const auto c = scenario_config(Scenario::drive, {{"g1N", "20"},
                                                     {"alpha", "0.2"},
                                                     {"delta", "0.1"},
                                                     {"d0", "1"},
                                                     {"init_phase", phase},
                                                     {"t_final", "T_sf"}});
    return simulate(c);
}

Outcome purity_collapse() {
    Outcome o;
    const Trajectory traj = collapse_run("plain");
    o.check(traj.valid, "run valid");
    double lowest = 1.0;
    for (const auto& r : traj.records) lowest = std::min(lowest, r.purity);
    o.check(lowest < 0.1, fmt("min P over [0, T_sf] = %.4f", lowest));
    return o;
}

Outcome imprinting_stationarity() {
    Outcome o;
    const auto c = scenario_config(Scenario::trap, {{"g1N", "20"},
                                                    {"alpha", "0.2"},
                                                    {"delta", "0"},
                                                    {"d0", "0"},
                                                    {"init_phase", "imprinted"},
                                                    {"t_final", "100"}});
    const Trajectory traj = simulate(c);
    o.check(traj.valid, "run valid");
    const auto& r0 = traj.records.front();
    double dp = 0.0, ds = 0.0;
    for (const auto& r : traj.records) {
        dp = std::max(dp, std::abs(r.purity - r0.purity));
        ds = std::max({ds, std::abs(r.sx - r0.sx), std::abs(r.sy - r0.sy), std::abs(r.sz - r0.sz)});
    }
    o.check(dp < 1e-3, fmt("max |P(t) - P(0)| = %.2e (P(0) = %.4f)", dp, r0.purity));
    o.check(ds < 1e-3, fmt("max |s_i(t) - s_i(0)| = %.2e", ds));
    return o;
}

Outcome imprinting_regularity() {
    Outcome o;
    const double var_plain = variance(column(collapse_run("plain"), &TrajectoryRecord::purity));
    const double var_imprinted = variance(column(collapse_run("imprinted"), &TrajectoryRecord::purity));
    o.check(var_imprinted < var_plain, fmt("var P: imprinted %.4e < plain %.4e", var_imprinted, var_plain));

    // Gaussian test case of the initial purity.
    const auto grid = make_grid(-16, 16, 512);
    const double alpha = 0.2, w = 1.0;
    const auto s = build_initial_state(grid, gaussian_profile(*grid, w, 1.0), 1.0, InitialPhase::imprinted, alpha);
    const double p0 = purity(spin_density_matrix(s));
    const double expected = analytic_imprinted_purity(alpha, w, DensityProfile::gaussian).value;
    o.check(std::abs(p0 - expected) < 1e-3, fmt("Gaussian P(0) = %.6f vs %.6f", p0, expected));

    // Zeros of the Thomas-Fermi imprinted coherence against the envelope zeros
    // 2 alpha w_TF = pi/2 + k pi (alpha w_TF >= 3), compared in the imprinted
    // wavenumber 2 alpha on the momentum grid.
    const double w_tf = thomas_fermi_radius(20.0);
    RealField tf = thomas_fermi_profile(20.0, grid).psi0;
    {
        // Discrete normalization of the sampled parabola.
        double n = 0.0;
        for (double v : tf) n += v * v * grid->dx();
        for (double& v : tf) v /= std::sqrt(n);
    }
    const auto coherence = [&](double a) {
        const auto st = build_initial_state(grid, tf, 1.0, InitialPhase::imprinted, a);
        return spin_density_matrix(st).rho12.real();
    };
    double worst = 0.0;
    for (int k = 2; k <= 5; ++k) {
        const double a_env = (std::numbers::pi / 2 + k * std::numbers::pi) / (2 * w_tf);
        double lo = a_env - 0.3 / w_tf, hi = a_env + 0.3 / w_tf;
        if (coherence(lo) * coherence(hi) > 0) {
            o.check(false, fmt("no coherence zero near alpha = %.4f", a_env));
            continue;
        }
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (coherence(lo) * coherence(mid) <= 0 ? hi : lo) = mid;
        }
        worst = std::max(worst, std::abs(2 * lo - 2 * a_env));
    }
    o.check(worst < grid->dk(), fmt("TF zeros: max |2 d_alpha| = %.4f < dk = %.4f", worst, grid->dk()));
    return o;
}

Outcome numerical_hygiene() {
    Outcome o;

    // Norm conservation and the purity identity on every row of a driven run.
    {
        const Trajectory traj = collapse_run("plain");
        double dn = 0.0, dp = 0.0;
        for (const auto& r : traj.records) {
            dn = std::max(dn, std::abs(r.norm - 1.0));
            dp = std::max(dp, std::abs(r.purity - (r.sx * r.sx + r.sy * r.sy + r.sz * r.sz)));
        }
        o.check(dn < 1e-8, fmt("max |norm - N| = %.2e", dn));
        o.check(dp < 1e-10, fmt("max |P - |s|^2| = %.2e", dp));
    }

    // Energy drift with a static trap.
    {
        const auto c = scenario_config(Scenario::trap, {{"g1N", "20"}, {"alpha", "0.2"}, {"delta", "0.1"}, {"t_final", "100"}});
        const Trajectory traj = simulate(c);
        const double e0 = traj.records.front().energy;
        double drift = 0.0;
        for (const auto& r : traj.records) drift = std::max(drift, std::abs(r.energy - e0) / std::abs(e0));
        o.check(drift < 1e-6, fmt("energy drift %.2e over t <= 100", drift));
    }

    // Global order of the split-step integrator on a driven g1N = 10 trapped run.
    {
        ModelParams p;
        p.g1N = 10.0;
        p.alpha = 0.2;
        p.delta = 0.1;
        p.d0 = 1.0;
        p.drive = DriveMode::resonant_sine;
        const auto grid = make_grid(-16, 16, 512);
        const auto s0 = build_initial_state(grid, minimize_hermite(10.0).expansion.sample(*grid), 1.0, InitialPhase::plain, p.alpha);
        const auto schedule = DriveSchedule::from(p);
        const double t_end = 2.0;
        const auto run = [&](double dt) {
            SpinorField s = s0;
            SplitStepper stepper(grid, p, schedule, dt);
            const auto n = static_cast<std::size_t>(std::llround(t_end / dt));
            for (std::size_t k = 0; k < n; ++k) stepper.step(s, static_cast<double>(k) * dt);
            return s;
        };
        const SpinorField ref = run(5e-5);
        std::vector<double> ldt, lerr;
        for (double dt : {0.02, 0.01, 0.005, 0.0025}) {
            ldt.push_back(std::log(dt));
            lerr.push_back(std::log(l2_distance(run(dt), ref)));
        }
        const double slope = fit_slope(ldt, lerr);
        o.check(std::abs(slope - 2.0) < 0.1, fmt("Strang order %.3f", slope));
    }

    // Split-step against Crank-Nicolson on the shared driven benchmark.
    {
        ModelParams p;
        p.g1N = 10.0;
        p.alpha = 0.1;
        p.delta = 0.1;
        p.d0 = 2.0;
        p.drive = DriveMode::resonant_sine;
        const auto grid = make_grid(-10, 10, 512);
        const auto schedule = DriveSchedule::from(p);
        SpinorField a = build_initial_state(grid, minimize_hermite(10.0).expansion.sample(*grid), 1.0, InitialPhase::plain, p.alpha);
        SpinorField b = a;
        const double dt = 1e-3;
        SplitStepper split(grid, p, schedule, dt);
        CrankNicolsonStepper cn(grid, p, schedule, dt);
        double worst = 0.0;
        for (std::size_t k = 0; k < 20000; ++k) {
            split.step(a, static_cast<double>(k) * dt);
            cn.step(b, static_cast<double>(k) * dt);
            if ((k + 1) % 1000 == 0) worst = std::max(worst, l2_distance(a, b));
        }
        o.check(worst < 1e-3, fmt("split-step vs Crank-Nicolson max L2 = %.2e over t <= 20", worst));
    }

    // Byte-identical reruns.
    {
        const auto root = std::filesystem::temp_directory_path() / ("socbec_acceptance_" + std::to_string(::getpid()));
        bool identical = true;
        for (const auto scenario : {Scenario::ground, Scenario::drive}) {
            std::vector<std::filesystem::path> dirs;
            for (const char* run : {"a", "b"}) {
                KeyValues settings{{"g1N", "20"}};
                if (scenario == Scenario::drive) settings.emplace_back("t_final", "5");
                auto c = scenario_config(scenario, settings);
                c.output_dir = (root / (to_string(scenario) + run)).string();
                identical = identical && run_scenario(c).exit_code == exit_ok;
                dirs.emplace_back(c.output_dir);
            }
            for (const auto& entry : std::filesystem::directory_iterator(dirs[0])) {
                const auto name = entry.path().filename();
                identical = identical && read_text(entry.path()) == read_text(dirs[1] / name);
            }
        }
        std::filesystem::remove_all(root);
        o.check(identical, "byte-identical reruns");
    }
    return o;
}

struct Criterion {
    const char* name;
    std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {"noninteracting_ground_state", noninteracting_ground_state},
        {"thomas_fermi_agreement", thomas_fermi_agreement},
        {"scaling_laws", scaling_laws},
        {"oracle_equivalence", oracle_equivalence},
        {"free_expansion_purity", free_expansion_purity},
        {"anomalous_velocity", anomalous_velocity},
        {"spin_dipole_frequency", spin_dipole_frequency_criterion},
        {"rabi_landmark", rabi_landmark},
        {"purity_collapse", purity_collapse},
        {"imprinting_stationarity", imprinting_stationarity},
        {"imprinting_regularity", imprinting_regularity},
        {"numerical_hygiene", numerical_hygiene},
    };
    return all;
}

} // namespace

int main(int argc, char** argv) {
    std::string only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = argv[++i];
        } else if (std::strcmp(argv[i], "--list") == 0) {
            for (const auto& c : criteria()) std::printf("%s\n", c.name);
            return 0;
        } else {
            std::fprintf(stderr, "usage: acceptance [--only NAME | --list]\n");
            return 2;
        }
    }
    int failures = 0;
    bool matched = false;
    for (const auto& c : criteria()) {
        if (!only.empty() && only != c.name) continue;
        matched = true;
        Outcome outcome;
        Stopwatch clock;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("error: ") + e.what()};
        }
        std::printf("%s %s (%.1f s): %s\n", outcome.pass ? "PASS" : "FAIL", c.name, clock.seconds(), outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    if (!matched) {
        std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
        return 2;
    }
    return failures == 0 ? 0 : 1;
}
