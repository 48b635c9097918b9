#include "socbec/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <set>
#include <thread>

#include "socbec/error.hpp"
#include "socbec/observables.hpp"

#ifndef SOCBEC_VERSION
#define SOCBEC_VERSION "unknown"
#endif

namespace socbec {
namespace {

Json model_to_json(const ModelParams& m) {
    return Json{{"g1N", m.g1N},
                {"alpha", m.alpha},
                {"delta", m.delta},
                {"d0", m.d0},
                {"drive", to_string(m.drive)},
                {"init_phase", to_string(m.init_phase)},
                {"trap_on", m.trap_on}};
}

std::string snapshot_name(std::size_t index) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "snapshot_%03zu.csv", index);
    return buffer;
}

RunOutcome run_ground(const RunConfig& c, const std::filesystem::path& dir, Json& meta) {
    RunOutcome outcome;
    const GridPtr grid = make_grid(c.grid.x_min, c.grid.x_max, c.grid.n_points);
    const double n = c.particle_number;
    Json record{{"g1N", c.model.g1N}, {"method", to_string(c.ground.method)}};
    RealField profile;
    switch (c.ground.method) {
    case GroundMethod::hermite: {
        HermiteOptions opts;
        opts.n_max = c.ground.n_max;
        opts.tol = c.ground.tol;
        opts.particle_number = n;
        const HermiteSolution s = minimize_hermite(c.model.g1N, opts);
        profile = s.expansion.sample(*grid);
        record["energy"] = s.result.energy;
        record["width"] = s.result.width;
        record["n_max"] = s.result.n_max;
        record["converged"] = s.result.converged;
        meta["iterations"] = s.result.iterations;
        break;
    }
    case GroundMethod::imaginary_time: {
        ImaginaryTimeOptions opts;
        opts.particle_number = n;
        const GroundStateResult r = imaginary_time_ground_state(c.model.g1N, grid, opts);
        profile = r.psi0;
        record["energy"] = r.energy;
        record["width"] = r.width;
        record["n_max"] = nullptr;
        record["converged"] = r.converged;
        meta["iterations"] = r.iterations;
        break;
    }
    case GroundMethod::thomas_fermi: {
        const GroundStateResult r = thomas_fermi_profile(c.model.g1N, grid, n);
        profile = r.psi0;
        record["energy"] = r.energy;
        record["width"] = r.width;
        record["n_max"] = nullptr;
        record["converged"] = true;
        break;
    }
    case GroundMethod::gaussian: {
        const VariationalGaussian v = gaussian_variational(c.model.g1N, n);
        profile = gaussian_profile(*grid, v.width, n);
        record["energy"] = v.energy;
        record["width"] = v.width;
        record["n_max"] = nullptr;
        record["converged"] = true;
        break;
    }
    }
    write_json(dir / "ground.json", record);
    outcome.artifacts.push_back("ground.json");
    if (c.ground.write_profile) {
        write_profile_csv(dir / "profile.csv", *grid, profile);
        outcome.artifacts.push_back("profile.csv");
    }
    return outcome;
}

RunOutcome run_dynamics(const RunConfig& c, const std::filesystem::path& dir, Json& meta) {
    RunOutcome outcome;
    const Trajectory traj = simulate(c);

    write_trajectory_csv(dir / "trajectory.csv", traj.records);
    outcome.artifacts.push_back("trajectory.csv");
    Json snaps = Json::array();
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        const std::string name = snapshot_name(i);
        write_snapshot_csv(dir / name, traj.snapshots[i].state);
        outcome.artifacts.push_back(name);
        snaps.push_back(Json{{"t", traj.snapshots[i].t}, {"file", name}});
    }
    meta["snapshots"] = snaps;
    meta["samples"] = traj.records.size();
    if (!traj.valid) {
        outcome.valid = false;
        outcome.exit_code = exit_guard;
        outcome.message = traj.invalid_reason;
    }
    return outcome;
}

} // namespace

std::string version_string() { return SOCBEC_VERSION; }

Json config_to_json(const RunConfig& c) {
    Json j;
    j["scenario"] = to_string(c.scenario);
    j["model"] = model_to_json(c.model);
    j["particle_number"] = c.particle_number;
    j["grid"] = Json{{"x_min", c.grid.x_min}, {"x_max", c.grid.x_max}, {"n_points", c.grid.n_points}};
    if (c.scenario == Scenario::ground) {
        j["ground"] = Json{{"method", to_string(c.ground.method)},
                           {"n_max", c.ground.n_max},
                           {"tol", c.ground.tol},
                           {"profile", c.ground.write_profile}};
    } else {
        j["evolution"] = Json{{"dt", c.evolution.dt},
                              {"t_final", c.evolution.t_final},
                              {"sample_stride", c.evolution.sample_stride},
                              {"snapshot_times", c.evolution.snapshot_times}};
        j["initial"] = Json{{"profile", c.initial.profile == InitialProfile::ground ? "ground" : "gaussian"},
                            {"width", c.initial.width}};
        if (c.model.drive == DriveMode::resonant_sine) {
            const RabiParameters r = rabi_parameters(c.model);
            j["rabi"] = Json{{"omega_R", r.omega_R}, {"T_sf", r.T_sf}};
        }
    }
    return j;
}

RealField initial_profile(const RunConfig& c, GridPtr grid) {
    if (c.initial.profile == InitialProfile::gaussian) return gaussian_profile(*grid, c.initial.width, c.particle_number);
    HermiteOptions opts;
    opts.n_max = c.ground.n_max;
    opts.tol = c.ground.tol;
    opts.particle_number = c.particle_number;
    return minimize_hermite(c.model.g1N, opts).expansion.sample(*grid);
}

Trajectory simulate(const RunConfig& c) {
    if (c.scenario == Scenario::ground) throw ConfigError("ground runs have no trajectory", "scenario");
    const GridPtr grid = make_grid(c.grid.x_min, c.grid.x_max, c.grid.n_points);
    const RealField psi_in = initial_profile(c, grid);
    const SpinorField initial = build_initial_state(grid, psi_in, c.particle_number, c.model.init_phase, c.model.alpha);
    if (!boundary_guard_ok(initial)) throw GuardError("initial state violates the boundary-density guard");
    return evolve(initial, c.model, DriveSchedule::from(c.model), c.evolution);
}

RunOutcome run_scenario(const RunConfig& config) {
    const std::filesystem::path dir(config.output_dir);
    RunOutcome outcome;
    Json meta;
    meta["version"] = version_string();
    try {
        config.validate();
        std::filesystem::create_directories(dir);
        meta["config"] = config_to_json(config);
        outcome = config.scenario == Scenario::ground ? run_ground(config, dir, meta) : run_dynamics(config, dir, meta);
    } catch (const ConfigError& e) {
        outcome = {exit_config, false, e.what(), {}};
    } catch (const GuardError& e) {
        outcome = {exit_guard, false, e.what(), {}};
    } catch (const NumericalError& e) {
        outcome = {exit_numerical, false, e.what(), {}};
    } catch (const std::exception& e) {
        outcome = {exit_config, false, e.what(), {}};
    }
    meta["valid"] = outcome.valid;
    meta["exit_code"] = outcome.exit_code;
    if (!outcome.message.empty()) meta["message"] = outcome.message;
    outcome.artifacts.push_back("metadata.json");
    meta["artifacts"] = outcome.artifacts;
    try {
        std::filesystem::create_directories(dir);
        write_json(dir / "metadata.json", meta);
    } catch (const std::exception& e) {
        if (outcome.exit_code == exit_ok) outcome = {exit_config, false, e.what(), outcome.artifacts};
    }
    return outcome;
}

void write_failure_metadata(const std::filesystem::path& dir, int exit_code, const std::string& message) {
    std::filesystem::create_directories(dir);
    write_json(dir / "metadata.json", Json{{"version", version_string()},
                                           {"valid", false},
                                           {"exit_code", exit_code},
                                           {"message", message},
                                           {"artifacts", Json::array({"metadata.json"})}});
}

std::vector<RunOutcome> sweep(const std::vector<RunConfig>& configs, unsigned parallelism,
                              const std::filesystem::path& root) {
    std::set<std::filesystem::path> seen;
    std::vector<RunConfig> placed = configs;
    for (auto& c : placed) {
        std::filesystem::path rel = std::filesystem::path(c.output_dir).lexically_normal();
        if (!rel.empty() && !rel.has_filename()) rel = rel.parent_path(); // "a/" names the same directory as "a"
        if (rel.is_absolute() || rel.empty() || *rel.begin() == "..") {
            throw ConfigError("sweep output directories must be relative to the sweep root", "output_dir");
        }
        if (!seen.insert(rel).second) throw ConfigError("duplicate output directory '" + rel.string() + "'", "output_dir");
        c.output_dir = (root / rel).string();
    }
    std::filesystem::create_directories(root);

    std::vector<RunOutcome> outcomes(placed.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < placed.size(); i = next++) outcomes[i] = run_scenario(placed[i]);
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(parallelism, static_cast<unsigned>(placed.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    Json runs = Json::array();
    for (std::size_t i = 0; i < placed.size(); ++i) {
        Json entry{{"output_dir", std::filesystem::path(configs[i].output_dir).lexically_normal().generic_string()},
                   {"scenario", to_string(configs[i].scenario)},
                   {"g1N", configs[i].model.g1N},
                   {"valid", outcomes[i].valid},
                   {"exit_code", outcomes[i].exit_code}};
        if (!outcomes[i].message.empty()) entry["message"] = outcomes[i].message;
        runs.push_back(entry);
    }
    write_json(root / "index.json", Json{{"version", version_string()}, {"runs", runs}});
    return outcomes;
}

} // namespace socbec
