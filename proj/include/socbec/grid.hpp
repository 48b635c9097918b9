#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace socbec {

/// Uniform periodic grid on [x_min, x_max) with its conjugate wavenumbers.
///
/// Nodes are x_j = x_min + j*dx for j = 0..n-1; x_max itself is identified
/// with x_min. Wavenumbers follow the standard DFT layout
/// k_j = 2*pi*j/L for j < n/2 and 2*pi*(j-n)/L otherwise, so they span
/// [-pi/dx, pi/dx).
class SpatialGrid {
public:
    SpatialGrid(double x_min, double x_max, std::size_t n_points);

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    double length() const noexcept { return x_max_ - x_min_; }
    double dx() const noexcept { return dx_; }
    double dk() const noexcept;
    std::size_t size() const noexcept { return x_.size(); }

    std::span<const double> x() const noexcept { return x_; }
    std::span<const double> k() const noexcept { return k_; }

    bool operator==(const SpatialGrid& other) const noexcept;

private:
    double x_min_;
    double x_max_;
    double dx_;
    std::vector<double> x_;
    std::vector<double> k_;
};

using GridPtr = std::shared_ptr<const SpatialGrid>;

/// Throws ConfigError unless x_max > x_min and n_points is a power of two >= 16.
GridPtr make_grid(double x_min, double x_max, std::size_t n_points);

bool is_power_of_two(std::size_t n) noexcept;

} // namespace socbec
