#include "socbec/params.hpp"

#include <cmath>

#include "socbec/error.hpp"

namespace socbec {

void ModelParams::validate() const {
    const auto check = [](double v, const char* key) {
        if (!std::isfinite(v)) throw ConfigError("must be finite", key);
    };
    check(g1N, "g1N");
    check(alpha, "alpha");
    check(delta, "delta");
    check(d0, "d0");
    if (g1N < 0.0) throw ConfigError("interaction must be non-negative", "g1N");
    if (d0 < 0.0) throw ConfigError("drive amplitude must be non-negative", "d0");
    if (delta < 0.0) throw ConfigError("Zeeman splitting must be non-negative", "delta");
}

std::string to_string(DriveMode mode) { return mode == DriveMode::none ? "none" : "resonant_sine"; }

std::string to_string(InitialPhase phase) { return phase == InitialPhase::plain ? "plain" : "imprinted"; }

DriveMode parse_drive_mode(std::string_view text) {
    if (text == "none" || text == "static") return DriveMode::none;
    if (text == "resonant_sine") return DriveMode::resonant_sine;
    throw ConfigError("expected none|resonant_sine, got '" + std::string(text) + "'", "drive");
}

InitialPhase parse_initial_phase(std::string_view text) {
    if (text == "plain") return InitialPhase::plain;
    if (text == "imprinted") return InitialPhase::imprinted;
    throw ConfigError("expected plain|imprinted, got '" + std::string(text) + "'", "init_phase");
}

} // namespace socbec
