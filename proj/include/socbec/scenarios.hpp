#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "socbec/config.hpp"
#include "socbec/io.hpp"

namespace socbec {

enum ExitCode : int { exit_ok = 0, exit_config = 1, exit_numerical = 2, exit_guard = 3 };

struct RunOutcome {
    int exit_code = exit_ok;
    bool valid = true;
    std::string message;
    std::vector<std::string> artifacts; // relative to the output directory
};

/// Profile handed to the dynamics scenarios: the ground state at the run's
/// g1N sampled on the run grid, or a Gaussian of the configured width.
RealField initial_profile(const RunConfig& config, GridPtr grid);

/// Builds the initial spinor of a dynamics scenario and evolves it.
Trajectory simulate(const RunConfig& config);

/// Runs one scenario into config.output_dir (created if needed). Errors are
/// reported through the exit code and recorded in metadata.json, which is
/// always written.
RunOutcome run_scenario(const RunConfig& config);

/// Runs every config on up to `parallelism` threads and writes index.json
/// into `root`; each config's output_dir is taken relative to `root`.
/// Throws ConfigError before running anything if two configs share an
/// output directory.
std::vector<RunOutcome> sweep(const std::vector<RunConfig>& configs, unsigned parallelism,
                              const std::filesystem::path& root);

Json config_to_json(const RunConfig& config);

/// metadata.json for a run that failed before a RunConfig existed.
void write_failure_metadata(const std::filesystem::path& dir, int exit_code, const std::string& message);

std::string version_string();

} // namespace socbec
