#include "socbec/spinor.hpp"

#include <algorithm>
#include <cmath>

#include "socbec/error.hpp"

namespace socbec {

SpinorField::SpinorField(GridPtr g, double n_particles)
    : grid(std::move(g)), up(grid->size()), down(grid->size()), particle_number(n_particles) {}

double integrate(const SpatialGrid& grid, std::span<const double> f) {
    double sum = 0.0;
    for (double v : f) sum += v;
    return sum * grid.dx();
}

RealField total_density(const SpinorField& field) {
    RealField rho(field.size());
    for (std::size_t j = 0; j < rho.size(); ++j) rho[j] = std::norm(field.up[j]) + std::norm(field.down[j]);
    return rho;
}

double norm(const SpinorField& field) { return integrate(*field.grid, total_density(field)); }

SpinorField normalize(SpinorField field, double n_particles) {
    if (!(n_particles > 0.0)) throw ConfigError("particle number must be positive");
    const double current = norm(field);
    if (!(current > 0.0) || !std::isfinite(current)) {
        throw NumericalError("cannot normalize a field with zero or non-finite norm");
    }
    const double scale = std::sqrt(n_particles / current);
    for (auto& v : field.up) v *= scale;
    for (auto& v : field.down) v *= scale;
    field.particle_number = n_particles;
    return field;
}

double boundary_density_ratio(const SpinorField& field) {
    const RealField rho = total_density(field);
    const double peak = *std::max_element(rho.begin(), rho.end());
    if (!(peak > 0.0)) return 0.0;
    return std::max(rho.front(), rho.back()) / peak;
}

bool boundary_guard_ok(const SpinorField& field, double threshold) {
    const RealField rho = total_density(field);
    const double peak = *std::max_element(rho.begin(), rho.end());
    return rho.front() + rho.back() < threshold * peak;
}

double l2_distance(const SpinorField& a, const SpinorField& b) {
    if (a.size() != b.size()) throw ConfigError("l2_distance: fields live on different grids");
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        sum += std::norm(a.up[j] - b.up[j]) + std::norm(a.down[j] - b.down[j]);
    }
    return std::sqrt(sum * a.grid->dx());
}

} // namespace socbec
