#include "socbec/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "socbec/error.hpp"

namespace socbec {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

SpatialGrid::SpatialGrid(double x_min, double x_max, std::size_t n_points)
    : x_min_(x_min), x_max_(x_max) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
        throw ConfigError("grid requires x_max > x_min (got [" + std::to_string(x_min) + ", " +
                          std::to_string(x_max) + "])");
    }
    if (n_points < 16 || !is_power_of_two(n_points)) {
        throw ConfigError("grid size must be a power of two >= 16 (got " +
                          std::to_string(n_points) + ")");
    }
    const auto n = static_cast<double>(n_points);
    dx_ = (x_max - x_min) / n;
    x_.resize(n_points);
    k_.resize(n_points);
    const double dk = 2.0 * std::numbers::pi / (x_max - x_min);
    const std::size_t half = n_points / 2;
    for (std::size_t j = 0; j < n_points; ++j) {
        x_[j] = x_min + static_cast<double>(j) * dx_;
        const auto shifted = static_cast<double>(j) - (j < half ? 0.0 : n);
        k_[j] = dk * shifted;
    }
}

double SpatialGrid::dk() const noexcept { return 2.0 * std::numbers::pi / length(); }

bool SpatialGrid::operator==(const SpatialGrid& other) const noexcept {
    return x_min_ == other.x_min_ && x_max_ == other.x_max_ && size() == other.size();
}

GridPtr make_grid(double x_min, double x_max, std::size_t n_points) {
    return std::make_shared<const SpatialGrid>(x_min, x_max, n_points);
}

} // namespace socbec
