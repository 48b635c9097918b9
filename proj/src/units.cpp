#include "socbec/units.hpp"

#include <cmath>
#include <numbers>

#include "socbec/error.hpp"

namespace socbec {

DimensionlessScales physical_to_dimensionless(const PhysicalUnits& u) {
    const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(u.mass)) throw ConfigError("mass must be positive", "mass");
    if (!positive(u.omega0)) throw ConfigError("omega0 must be positive", "omega0");
    if (!positive(u.omega_perp)) throw ConfigError("omega_perp must be positive", "omega_perp");
    if (!positive(u.scattering_length))
        throw ConfigError("scattering length must be positive", "scattering_length");
    if (!positive(u.particle_number))
        throw ConfigError("particle number must be positive", "particle_number");

    DimensionlessScales s;
    s.a_ho = std::sqrt(constants::hbar / (u.mass * u.omega0));
    s.time_unit = 1.0 / u.omega0;
    s.speed_unit = s.a_ho * u.omega0;
    s.g1 = 2.0 * (u.scattering_length / s.a_ho) * (u.omega_perp / u.omega0);
    s.g1N = s.g1 * u.particle_number;
    return s;
}

PhysicalUnits rubidium87_reference_trap(double particle_number) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return {constants::rubidium87_mass, two_pi * 10.0, two_pi * 100.0, 100.0 * constants::bohr_radius,
            particle_number};
}

} // namespace socbec
