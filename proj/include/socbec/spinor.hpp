#pragma once

#include <complex>
#include <span>
#include <vector>

#include "socbec/grid.hpp"

namespace socbec {

using Complex = std::complex<double>;
using ComplexField = std::vector<Complex>;
using RealField = std::vector<double>;

/// Two-component condensate wave function sampled on a grid.
///
/// `particle_number` is the declared N the field is normalized to; all
/// integrals use the rectangle rule on the periodic grid.
struct SpinorField {
    GridPtr grid;
    ComplexField up;
    ComplexField down;
    double particle_number = 1.0;

    SpinorField() = default;
    SpinorField(GridPtr g, double n_particles);

    std::size_t size() const noexcept { return up.size(); }
};

/// Rectangle-rule integral of a sampled real function.
double integrate(const SpatialGrid& grid, std::span<const double> f);

/// Total density |psi_up|^2 + |psi_down|^2 at every node.
RealField total_density(const SpinorField& field);

/// Integral of the total density.
double norm(const SpinorField& field);

/// Rescales the field so that its norm equals `n_particles`. Throws
/// NumericalError on a zero (or non-finite) field.
SpinorField normalize(SpinorField field, double n_particles);

/// Largest density at the two outermost nodes divided by the peak density.
double boundary_density_ratio(const SpinorField& field);

/// True while the density at the periodic boundary stays below
/// `threshold` times the peak density.
bool boundary_guard_ok(const SpinorField& field, double threshold = 1e-8);

/// Root-mean-square distance sqrt(integral |a - b|^2) over both components.
double l2_distance(const SpinorField& a, const SpinorField& b);

} // namespace socbec
