#pragma once

#include "socbec/spinor.hpp"

namespace socbec {

/// Reduced 2x2 spin density matrix obtained by tracing out x.
///
/// rho21 is the conjugate of rho12 and is never stored.
struct SpinDensityMatrix {
    double rho11 = 0.0;
    double rho22 = 0.0;
    Complex rho12{};
    double particle_number = 1.0;

    double trace() const noexcept { return rho11 + rho22; }
};

/// Bloch vector <sigma_i> and purity at time t.
struct BlochRecord {
    double t = 0.0;
    double sx = 0.0;
    double sy = 0.0;
    double sz = 0.0;
    double purity = 0.0;
};

SpinDensityMatrix spin_density_matrix(const SpinorField& state);

/// P = 1 + 4(|rho12|^2 - rho11 rho22)/N^2 with N taken as tr(rho).
///
/// Throws NumericalError if P leaves [-1e-10, 1 + 1e-10]; values inside that
/// slack are clamped to [0, 1].
double purity(const SpinDensityMatrix& rho);

/// The same quantity written as (2/N^2)(tr(rho^2) - N^2/2).
double purity_from_trace_square(const SpinDensityMatrix& rho);

/// <sigma_x> = 2 Re(rho12)/N, <sigma_y> = -2 Im(rho12)/N, <sigma_z> = 2 rho11/N - 1.
/// Using tr(rho) for N makes purity == sx^2 + sy^2 + sz^2 an identity.
BlochRecord bloch_vector(const SpinDensityMatrix& rho, double t = 0.0);

/// <x sigma_z> = (1/N) integral x (|psi_up|^2 - |psi_down|^2) dx.
double spin_dipole_moment(const SpinorField& state);

/// Condensate width [2/N integral x^2 |Psi|^2 dx]^{1/2}.
double condensate_width(const SpinorField& state);

/// (1/N) integral x |Psi|^2 dx.
double mean_position(const SpinorField& state);

/// Mean position of one spin component, normalized by that component's weight.
double component_mean_position(const SpinorField& state, bool spin_up);

/// (1/N) <Psi| p |Psi>, evaluated spectrally.
double mean_momentum(const SpinorField& state);

/// Free-expansion purity of an initially Gaussian noninteracting condensate:
/// exp(-2 (alpha t / w)^2).
double analytic_free_purity(double alpha, double w, double t);

enum class DensityProfile { gaussian, thomas_fermi };

struct AnalyticPurity {
    double value = 0.0;
    /// True when `value` is only the asymptotic shape (unknown prefactor).
    bool asymptotic = false;
};

/// Initial purity of the phase-imprinted state.
///
/// Gaussian: exp(-2 (alpha w)^2), exact. Thomas-Fermi: the large-(alpha w)
/// envelope cos^2(2 alpha w) / (alpha w)^4, valid for alpha w >= 3 and returned
/// with `asymptotic = true`; throws ConfigError below that.
AnalyticPurity analytic_imprinted_purity(double alpha, double w, DensityProfile profile);

} // namespace socbec
