#include "socbec/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "socbec/error.hpp"

namespace socbec {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_real(std::string_view text, const std::string& key) {
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
        throw ConfigError("expected a number, got '" + std::string(text) + "'", key);
    }
    return value;
}

long long parse_integer(std::string_view text, const std::string& key) {
    long long value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
        throw ConfigError("expected an integer, got '" + std::string(text) + "'", key);
    }
    return value;
}

std::size_t parse_count(std::string_view text, const std::string& key) {
    const long long v = parse_integer(text, key);
    if (v < 0) throw ConfigError("expected a non-negative integer, got '" + std::string(text) + "'", key);
    return static_cast<std::size_t>(v);
}

bool parse_bool(std::string_view text, const std::string& key) {
    if (text == "true" || text == "1" || text == "on" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "off" || text == "no") return false;
    throw ConfigError("expected true|false, got '" + std::string(text) + "'", key);
}

std::vector<double> parse_real_list(std::string_view text, const std::string& key) {
    std::vector<double> out;
    if (trim(text).empty()) return out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        out.push_back(parse_real(item, key));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

// "T_sf", "2*T_sf", "2 T_sf" or "2·T_sf" -> factor; nullopt for a plain number.
std::optional<double> parse_spin_flip_multiple(std::string_view text, const std::string& key) {
    const auto pos = text.find("T_sf");
    if (pos == std::string_view::npos) return std::nullopt;
    if (!trim(text.substr(pos + 4)).empty()) throw ConfigError("unsupported expression '" + std::string(text) + "'", key);
    std::string_view factor = trim(text.substr(0, pos));
    if (factor.empty()) return 1.0;
    for (std::string_view op : {"*", "\xc2\xb7"}) {
        if (factor.size() >= op.size() && factor.substr(factor.size() - op.size()) == op) {
            factor = trim(factor.substr(0, factor.size() - op.size()));
            break;
        }
    }
    return parse_real(factor, key);
}

std::string canonical_key(std::string_view key) {
    static const char* evolution_keys[] = {"dt", "t_final", "sample_stride", "snapshot_times"};
    for (const char* k : evolution_keys) {
        if (key == k) return "evolution." + std::string(key);
    }
    return std::string(key);
}

RunConfig scenario_defaults(Scenario scenario) {
    RunConfig c;
    c.scenario = scenario;
    switch (scenario) {
    case Scenario::ground:
        c.model.g1N = 40.0;
        break;
    case Scenario::expand:
        c.model.alpha = 0.2;
        c.model.trap_on = false;
        c.grid = {-64.0, 64.0, 2048};
        c.evolution.t_final = 10.0;
        c.evolution.snapshot_times = {0.0, 2.0, 4.0, 6.0, 8.0, 10.0};
        break;
    case Scenario::trap:
        c.model.alpha = 0.2;
        c.evolution.t_final = 100.0;
        break;
    case Scenario::drive:
        c.model.alpha = 0.1;
        c.model.delta = 0.1;
        c.model.d0 = 2.0;
        c.model.drive = DriveMode::resonant_sine;
        break;
    }
    return c;
}

struct Pending {
    bool dt_set = false;
    std::optional<double> t_final_factor;
    bool t_final_set = false;
    bool snapshots_set = false;
};

void apply(RunConfig& c, Pending& pending, const std::string& raw_key, std::string_view value) {
    const std::string key = canonical_key(raw_key);
    if (key == "scenario") {
        if (parse_scenario(value) != c.scenario) throw ConfigError("conflicting scenario '" + std::string(value) + "'", key);
    } else if (key == "g1N") {
        c.model.g1N = parse_real(value, key);
    } else if (key == "alpha") {
        c.model.alpha = parse_real(value, key);
    } else if (key == "delta") {
        c.model.delta = parse_real(value, key);
    } else if (key == "d0") {
        c.model.d0 = parse_real(value, key);
    } else if (key == "drive") {
        c.model.drive = parse_drive_mode(value);
    } else if (key == "init_phase") {
        c.model.init_phase = parse_initial_phase(value);
    } else if (key == "trap_on") {
        c.model.trap_on = parse_bool(value, key);
    } else if (key == "particle_number") {
        c.particle_number = parse_real(value, key);
    } else if (key == "output_dir") {
        c.output_dir = std::string(value);
    } else if (key == "grid.x_min") {
        c.grid.x_min = parse_real(value, key);
    } else if (key == "grid.x_max") {
        c.grid.x_max = parse_real(value, key);
    } else if (key == "grid.n_points") {
        c.grid.n_points = parse_count(value, key);
    } else if (key == "evolution.dt") {
        c.evolution.dt = parse_real(value, key);
        pending.dt_set = true;
    } else if (key == "evolution.t_final") {
        pending.t_final_set = true;
        pending.t_final_factor = parse_spin_flip_multiple(value, key);
        if (!pending.t_final_factor) c.evolution.t_final = parse_real(value, key);
    } else if (key == "evolution.sample_stride") {
        c.evolution.sample_stride = parse_count(value, key);
    } else if (key == "evolution.snapshot_times") {
        c.evolution.snapshot_times = parse_real_list(value, key);
        pending.snapshots_set = true;
    } else if (key == "ground.method") {
        c.ground.method = parse_ground_method(value);
    } else if (key == "ground.n_max") {
        c.ground.n_max = static_cast<int>(parse_integer(value, key));
    } else if (key == "ground.tol") {
        c.ground.tol = parse_real(value, key);
    } else if (key == "ground.profile") {
        c.ground.write_profile = parse_bool(value, key);
    } else if (key == "initial.profile") {
        if (value == "ground") c.initial.profile = InitialProfile::ground;
        else if (value == "gaussian") c.initial.profile = InitialProfile::gaussian;
        else throw ConfigError("expected ground|gaussian, got '" + std::string(value) + "'", key);
    } else if (key == "initial.width") {
        c.initial.width = parse_real(value, key);
    } else {
        throw ConfigError("unknown key", raw_key);
    }
}

} // namespace

std::string to_string(Scenario scenario) {
    switch (scenario) {
    case Scenario::ground: return "ground";
    case Scenario::expand: return "expand";
    case Scenario::trap: return "trap";
    case Scenario::drive: return "drive";
    }
    return "unknown";
}

Scenario parse_scenario(std::string_view text) {
    if (text == "ground") return Scenario::ground;
    if (text == "expand") return Scenario::expand;
    if (text == "trap") return Scenario::trap;
    if (text == "drive") return Scenario::drive;
    throw ConfigError("expected ground|expand|trap|drive, got '" + std::string(text) + "'", "scenario");
}

std::pair<std::string, std::string> parse_assignment(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key=value, got '" + std::string(text) + "'");
    const auto key = trim(text.substr(0, eq));
    if (key.empty()) throw ConfigError("empty key in '" + std::string(text) + "'");
    return {std::string(key), std::string(trim(text.substr(eq + 1)))};
}

KeyValues parse_key_values(std::string_view text) {
    KeyValues out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.find('=') == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        out.push_back(parse_assignment(line));
    }
    return out;
}

void RunConfig::validate() const {
    model.validate();
    evolution.validate();
    if (!(grid.x_max > grid.x_min)) throw ConfigError("x_max must exceed x_min", "grid.x_max");
    if (grid.n_points < 16 || !is_power_of_two(grid.n_points)) {
        throw ConfigError("must be a power of two >= 16", "grid.n_points");
    }
    if (!(particle_number > 0.0) || !std::isfinite(particle_number)) {
        throw ConfigError("must be positive", "particle_number");
    }
    if (ground.n_max < 0) throw ConfigError("must be non-negative", "ground.n_max");
    if (!(ground.tol > 0.0)) throw ConfigError("must be positive", "ground.tol");
    if (!(initial.width > 0.0)) throw ConfigError("must be positive", "initial.width");
    if (output_dir.empty()) throw ConfigError("must not be empty", "output_dir");
    switch (scenario) {
    case Scenario::ground:
        if (ground.method == GroundMethod::thomas_fermi && !(model.g1N > 0.0)) {
            throw ConfigError("Thomas-Fermi profile needs g1N > 0", "ground.method");
        }
        break;
    case Scenario::expand:
        if (model.trap_on) throw ConfigError("expand runs with the trap switched off", "trap_on");
        if (model.drive != DriveMode::none) throw ConfigError("expand runs without a drive", "drive");
        break;
    case Scenario::trap:
        if (!model.trap_on) throw ConfigError("trap runs need the trap switched on", "trap_on");
        if (model.drive != DriveMode::none) throw ConfigError("trap runs use a static trap", "drive");
        break;
    case Scenario::drive:
        if (!model.trap_on) throw ConfigError("drive runs need the trap switched on", "trap_on");
        if (model.drive != DriveMode::resonant_sine) throw ConfigError("drive runs need drive = resonant_sine", "drive");
        if (!(model.delta > 0.0)) throw ConfigError("drive runs need delta > 0", "delta");
        if (!(model.d0 > 0.0)) throw ConfigError("drive runs need d0 > 0", "d0");
        if (!(model.alpha > 0.0)) throw ConfigError("drive runs need alpha > 0", "alpha");
        break;
    }
}

RunConfig parse_config(std::string_view text, const KeyValues& overrides, std::optional<Scenario> scenario) {
    KeyValues entries = parse_key_values(text);
    entries.insert(entries.end(), overrides.begin(), overrides.end());

    for (const auto& [key, value] : entries) {
        if (key != "scenario") continue;
        const Scenario named = parse_scenario(value);
        if (scenario && *scenario != named) {
            throw ConfigError("config names scenario '" + value + "' but '" + to_string(*scenario) + "' was requested",
                              "scenario");
        }
        scenario = named;
    }
    if (!scenario) throw ConfigError("no scenario given", "scenario");

    RunConfig c = scenario_defaults(*scenario);
    Pending pending;
    for (const auto& [key, value] : entries) apply(c, pending, key, value);

    if (c.scenario == Scenario::drive && !pending.t_final_set) pending.t_final_factor = 2.0;
    if (pending.t_final_factor) {
        RabiParameters rabi;
        try {
            rabi = rabi_parameters(c.model);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("T_sf undefined: ") + e.what(), "evolution.t_final");
        }
        c.evolution.t_final = *pending.t_final_factor * rabi.T_sf;
    }
    if (!pending.snapshots_set) {
        auto& times = c.evolution.snapshot_times;
        const double t_final = c.evolution.t_final;
        times.erase(std::remove_if(times.begin(), times.end(), [t_final](double t) { return t > t_final; }), times.end());
    }
    if (c.scenario == Scenario::expand && !pending.dt_set) c.evolution.dt = c.model.g1N >= 20.0 ? 5e-4 : 1e-3;

    c.validate();
    return c;
}

} // namespace socbec
