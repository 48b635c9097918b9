#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "socbec/error.hpp"
#include "socbec/spinor.hpp"

namespace socbec {

enum class GroundMethod { hermite, imaginary_time, thomas_fermi, gaussian };

std::string to_string(GroundMethod method);
GroundMethod parse_ground_method(std::string_view text);

/// psi_0 = sqrt(N) * sum_n C_{2n} phi_{2n}, with sum C_{2n}^2 = 1.
struct HermiteExpansion {
    std::vector<double> coefficients; // C_0, C_2, ..., C_{2 n_max}
    int n_max = 0;
    double particle_number = 1.0;

    /// Evaluates psi_0 on `grid`, renormalized to N there.
    RealField sample(const SpatialGrid& grid) const;
};

struct GroundStateResult {
    GridPtr grid;
    RealField psi0;
    double energy = 0.0; // extensive, units of omega0
    double width = 0.0;  // w_gs
    GroundMethod method = GroundMethod::hermite;
    double particle_number = 1.0;
    int n_max = 0;
    bool converged = true;
    std::size_t iterations = 0;
    std::vector<double> energy_history;
};

/// Gaussian ansatz psi_G = (N / (sqrt(pi) w))^{1/2} exp(-x^2 / (2 w^2)).
struct VariationalGaussian {
    double width = 1.0;
    double energy = 0.0;
    double shift = 0.0;
    double particle_number = 1.0;
};

/// Even-order harmonic-oscillator eigenfunctions phi_0, phi_2, ..., phi_{2 n_max}
/// on `grid`, built with the three-term recurrence on phi_n itself.
/// Throws ConfigError naming the order when phi_{2 n_max} exceeds 1e-12 at the
/// grid boundary.
std::vector<RealField> hermite_basis_functions(const SpatialGrid& grid, int n_max);

/// E_tot = 1/2 integral [psi'^2 + x^2 psi^2 + (g1N/N) psi^4] dx for a real
/// field normalized to N (derivative taken spectrally). Throws ConfigError if
/// the norm is off by more than 1e-6 relative.
double total_energy_functional(const SpatialGrid& grid, std::span<const double> psi, double n_particles,
                               double g1N);

/// w_gs = [2/N integral x^2 psi^2 dx]^{1/2}.
double condensate_width(const SpatialGrid& grid, std::span<const double> psi, double n_particles);

/// Normalized Gaussian profile of width w centred at `center`.
RealField gaussian_profile(const SpatialGrid& grid, double w, double n_particles, double center = 0.0);

/// Energy per particle of a unit-normalized Hermite expansion, with the
/// quartic integral done by quadrature on an internal grid wide and fine
/// enough for phi_{2 n_max}.
class HermiteEnergyModel {
public:
    HermiteEnergyModel(int n_max, double g1N);

    int n_max() const noexcept { return n_max_; }
    std::size_t size() const noexcept { return basis_.size(); }
    const GridPtr& grid() const noexcept { return grid_; }

    /// f = sum_n c_n phi_{2n} on the quadrature grid.
    RealField shape(std::span<const double> c) const;
    /// sum_n c_n^2 (2n + 1/2) + (g1N/2) integral f^4.
    double energy(std::span<const double> c) const;
    /// Unconstrained gradient of energy() with respect to c.
    std::vector<double> gradient(std::span<const double> c) const;

private:
    int n_max_;
    double g1N_;
    GridPtr grid_;
    std::vector<RealField> basis_;
};

struct HermiteOptions {
    int n_max = 32;
    /// Stop when the tangent-space gradient norm drops below this.
    double tol = 1e-9;
    int max_iterations = 20000;
    /// Double n_max until |C_{2 n_max}| < 1e-3.
    bool grow = true;
    int max_n_max = 192;
    double particle_number = 1.0;
};

struct HermiteSolution {
    HermiteExpansion expansion;
    GroundStateResult result; // psi0 on the model's quadrature grid
};

/// Thrown when the coefficient minimizer hits its iteration cap; carries the
/// best iterate.
class HermiteConvergenceError : public NumericalError {
public:
    HermiteConvergenceError(const std::string& what, HermiteExpansion best)
        : NumericalError(what), best_(std::move(best)) {}
    const HermiteExpansion& best() const noexcept { return best_; }

private:
    HermiteExpansion best_;
};

/// Minimizes E_tot over the truncated even Hermite basis with preconditioned
/// nonlinear conjugate gradients on the unit coefficient sphere. C_0 > 0 on
/// return. Throws ConfigError when |C_{2 n_max}| >= 1e-3 and growth is
/// disabled or exhausted.
HermiteSolution minimize_hermite(double g1N, const HermiteOptions& options = {});

struct ImaginaryTimeOptions {
    double dtau = 1e-3;
    /// Relative energy change per check interval that counts as converged.
    double tol = 1e-12;
    std::size_t check_interval = 100;
    std::size_t max_steps = 2'000'000;
    double particle_number = 1.0;
    /// Starting profile; defaults to the variational Gaussian.
    std::optional<RealField> initial_guess;
};

class ImaginaryTimeError : public NumericalError {
public:
    ImaginaryTimeError(const std::string& what, std::vector<double> history)
        : NumericalError(what), history_(std::move(history)) {}
    const std::vector<double>& energy_history() const noexcept { return history_; }

private:
    std::vector<double> history_;
};

/// Normalized imaginary-time relaxation with the real-time split-step kernel
/// (t -> -i tau). The energy is sampled every check interval into
/// `energy_history`.
GroundStateResult imaginary_time_ground_state(double g1N, GridPtr grid,
                                              const ImaginaryTimeOptions& options = {});

/// w_TF = (3 g1N / 2)^{1/3}.
double thomas_fermi_radius(double g1N);

/// Thomas-Fermi profile sqrt(3N/(4 w^3)) sqrt(w^2 - x^2) inside |x| <= w_TF.
/// The reported energy is the Thomas-Fermi energy (3/10) N w_TF^2, which
/// omits the kinetic term. Throws ConfigError for g1N <= 0.
GroundStateResult thomas_fermi_profile(double g1N, GridPtr grid, double n_particles = 1.0);

/// E(w) = N [ (w^2 + 1/w^2)/4 + g1N / (2 sqrt(2 pi) w) ].
double gaussian_energy(double w, double g1N, double n_particles = 1.0);
/// dE/dw = N [ (w - 1/w^3)/2 - g1N / (2 sqrt(2 pi) w^2) ].
double gaussian_energy_derivative(double w, double g1N, double n_particles = 1.0);

/// Solves dE/dw = 0 by bracketed root finding on [1, 1 + 2 (g1N/sqrt(2 pi))^{1/3}].
VariationalGaussian gaussian_variational(double g1N, double n_particles = 1.0);

struct SpinDipoleFrequency {
    double exact = 1.0;                // sqrt(1 - g1N / (sqrt(2 pi) w^3)), variational w
    std::optional<double> asymptotic;  // (sqrt(2 pi) / g1N)^{2/3}; empty at g1N = 0
};

SpinDipoleFrequency spin_dipole_frequency(double g1N);

/// E_sh = (N/2) xi^2 (1 - g1N / (sqrt(2 pi) w^3)); requires |xi| <= 0.1 w.
double shifted_gaussian_energy(double g1N, double w, double xi, double n_particles = 1.0);

} // namespace socbec
