#include "socbec/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "socbec/error.hpp"
#include "socbec/spectral.hpp"

namespace socbec {

SpinDensityMatrix spin_density_matrix(const SpinorField& state) {
    double r11 = 0.0;
    double r22 = 0.0;
    Complex r12{};
    for (std::size_t j = 0; j < state.size(); ++j) {
        r11 += std::norm(state.up[j]);
        r22 += std::norm(state.down[j]);
        r12 += std::conj(state.up[j]) * state.down[j];
    }
    const double dx = state.grid->dx();
    return {r11 * dx, r22 * dx, r12 * dx, state.particle_number};
}

namespace {

double checked_purity(double p) {
    constexpr double slack = 1e-10;
    if (!(p >= -slack && p <= 1.0 + slack)) {
        throw NumericalError("purity " + std::to_string(p) + " outside [0, 1]; quadrature is broken");
    }
    return std::clamp(p, 0.0, 1.0);
}

} // namespace

double purity(const SpinDensityMatrix& rho) {
    const double n = rho.trace();
    if (!(n > 0.0)) throw NumericalError("purity of an empty density matrix");
    return checked_purity(1.0 + 4.0 * (std::norm(rho.rho12) - rho.rho11 * rho.rho22) / (n * n));
}

double purity_from_trace_square(const SpinDensityMatrix& rho) {
    const double n = rho.trace();
    if (!(n > 0.0)) throw NumericalError("purity of an empty density matrix");
    const double tr_sq = rho.rho11 * rho.rho11 + rho.rho22 * rho.rho22 + 2.0 * std::norm(rho.rho12);
    return checked_purity(2.0 / (n * n) * (tr_sq - n * n / 2.0));
}

BlochRecord bloch_vector(const SpinDensityMatrix& rho, double t) {
    const double n = rho.trace();
    if (!(n > 0.0)) throw NumericalError("Bloch vector of an empty density matrix");
    BlochRecord r;
    r.t = t;
    r.sx = 2.0 * rho.rho12.real() / n;
    r.sy = -2.0 * rho.rho12.imag() / n;
    r.sz = 2.0 * rho.rho11 / n - 1.0;
    r.purity = r.sx * r.sx + r.sy * r.sy + r.sz * r.sz;
    checked_purity(r.purity);
    return r;
}

double spin_dipole_moment(const SpinorField& state) {
    const auto x = state.grid->x();
    double sum = 0.0;
    for (std::size_t j = 0; j < state.size(); ++j) {
        sum += x[j] * (std::norm(state.up[j]) - std::norm(state.down[j]));
    }
    return sum * state.grid->dx() / state.particle_number;
}

double condensate_width(const SpinorField& state) {
    const auto x = state.grid->x();
    double sum = 0.0;
    for (std::size_t j = 0; j < state.size(); ++j) {
        sum += x[j] * x[j] * (std::norm(state.up[j]) + std::norm(state.down[j]));
    }
    return std::sqrt(2.0 * sum * state.grid->dx() / state.particle_number);
}

double mean_position(const SpinorField& state) {
    const auto x = state.grid->x();
    double sum = 0.0;
    for (std::size_t j = 0; j < state.size(); ++j) {
        sum += x[j] * (std::norm(state.up[j]) + std::norm(state.down[j]));
    }
    return sum * state.grid->dx() / state.particle_number;
}

double component_mean_position(const SpinorField& state, bool spin_up) {
    const auto& c = spin_up ? state.up : state.down;
    const auto x = state.grid->x();
    double first = 0.0;
    double weight = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        first += x[j] * std::norm(c[j]);
        weight += std::norm(c[j]);
    }
    if (!(weight > 0.0)) throw NumericalError("component has zero weight");
    return first / weight;
}

double mean_momentum(const SpinorField& state) {
    const auto& grid = *state.grid;
    const auto k = grid.k();
    const Fft fft(grid.size());
    double sum = 0.0;
    for (const auto* comp : {&state.up, &state.down}) {
        ComplexField work = *comp;
        fft.forward(work);
        for (std::size_t j = 0; j < work.size(); ++j) sum += k[j] * std::norm(work[j]);
    }
    // Parseval: sum |F_j|^2 = n sum |f_j|^2.
    return sum * grid.dx() / static_cast<double>(grid.size()) / state.particle_number;
}

double analytic_free_purity(double alpha, double w, double t) {
    if (!(w > 0.0)) throw ConfigError("width must be positive", "w");
    const double r = alpha * t / w;
    return std::exp(-2.0 * r * r);
}

AnalyticPurity analytic_imprinted_purity(double alpha, double w, DensityProfile profile) {
    if (!(w > 0.0)) throw ConfigError("width must be positive", "w");
    const double aw = alpha * w;
    if (profile == DensityProfile::gaussian) return {std::exp(-2.0 * aw * aw), false};
    if (std::abs(aw) < 3.0) {
        throw ConfigError("Thomas-Fermi imprinted purity needs alpha*w_TF >= 3 (got " +
                              std::to_string(aw) + ")",
                          "alpha");
    }
    const double c = std::cos(2.0 * aw);
    return {c * c / (aw * aw * aw * aw), true};
}

} // namespace socbec
