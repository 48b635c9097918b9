#pragma once

namespace socbec {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
inline constexpr double bohr_radius = 5.29177210903e-11;      // m
inline constexpr double rubidium87_mass = 86.909180527 * atomic_mass_unit;
} // namespace constants

/// Laboratory parameters of a quasi-1D trap.
struct PhysicalUnits {
    double mass = 0.0;              // kg
    double omega0 = 0.0;            // axial trap, rad/s
    double omega_perp = 0.0;        // transverse trap, rad/s
    double scattering_length = 0.0; // m
    double particle_number = 1.0;
};

/// Oscillator units (hbar = M = omega0 = 1) and the reduced coupling.
struct DimensionlessScales {
    double a_ho = 0.0;       // m
    double time_unit = 0.0;  // s
    double speed_unit = 0.0; // m/s
    double g1 = 0.0;         // 2 (a_s / a_ho) (omega_perp / omega0)
    double g1N = 0.0;
};

/// Throws ConfigError unless every input is strictly positive.
DimensionlessScales physical_to_dimensionless(const PhysicalUnits& units);

/// 87Rb in a 2 pi x 10 Hz axial / 2 pi x 100 Hz transverse trap, a_s = 100 a_B.
PhysicalUnits rubidium87_reference_trap(double particle_number = 1.0);

} // namespace socbec
