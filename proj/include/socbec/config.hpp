#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "socbec/dynamics.hpp"
#include "socbec/ground_state.hpp"
#include "socbec/params.hpp"

namespace socbec {

enum class Scenario { ground, expand, trap, drive };

std::string to_string(Scenario scenario);
Scenario parse_scenario(std::string_view text);

struct GridSpec {
    double x_min = -16.0;
    double x_max = 16.0;
    std::size_t n_points = 512;
};

struct GroundSettings {
    GroundMethod method = GroundMethod::hermite;
    int n_max = 32;
    double tol = 1e-9;
    bool write_profile = true;
};

enum class InitialProfile { ground, gaussian };

struct InitialSettings {
    InitialProfile profile = InitialProfile::ground;
    double width = 1.0; // used by the gaussian profile
};

struct RunConfig {
    Scenario scenario = Scenario::ground;
    ModelParams model;
    EvolutionConfig evolution;
    GridSpec grid;
    GroundSettings ground;
    InitialSettings initial;
    double particle_number = 1.0;
    std::string output_dir = ".";

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

/// key = value pairs, in order of appearance.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Splits a flat "key = value" document; '#' starts a comment. Throws
/// ConfigError on a line without '='.
KeyValues parse_key_values(std::string_view text);

/// "key=value" -> {key, value}.
std::pair<std::string, std::string> parse_assignment(std::string_view text);

/// Builds a RunConfig: scenario defaults first, then `text`, then `overrides`.
/// `scenario` (from the command line) must agree with a `scenario` key if
/// both are given. Keys:
///   scenario, g1N, alpha, delta, d0, drive, init_phase, trap_on,
///   particle_number, output_dir,
///   grid.x_min, grid.x_max, grid.n_points,
///   evolution.dt, evolution.t_final, evolution.sample_stride,
///   evolution.snapshot_times (the evolution. prefix is optional),
///   ground.method, ground.n_max, ground.tol, ground.profile,
///   initial.profile, initial.width.
/// t_final also accepts "T_sf" or "<factor>*T_sf".
RunConfig parse_config(std::string_view text, const KeyValues& overrides = {},
                       std::optional<Scenario> scenario = std::nullopt);

} // namespace socbec
