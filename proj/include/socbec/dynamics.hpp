#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "socbec/params.hpp"
#include "socbec/spectral.hpp"
#include "socbec/spinor.hpp"

namespace socbec {

/// Trap-centre motion d(t): zero when static, d0 sin(delta t) when resonant.
struct DriveSchedule {
    DriveMode mode = DriveMode::none;
    double d0 = 0.0;
    double delta = 0.0;

    double displacement(double t) const noexcept;
    static DriveSchedule from(const ModelParams& params) noexcept;
};

double trap_displacement(double t, const DriveSchedule& schedule) noexcept;

struct EvolutionConfig {
    double dt = 1e-3;
    double t_final = 0.0;
    std::size_t sample_stride = 100;
    std::vector<double> snapshot_times;

    /// Throws ConfigError unless 0 < dt <= 1e-2, t_final >= 0, stride >= 1 and
    /// every snapshot time lies in [0, t_final].
    void validate() const;
    std::size_t step_count() const;
};

struct RabiParameters {
    double omega_R = 0.0; // alpha * d0 * delta
    double T_sf = 0.0;    // pi / omega_R
};

/// Throws ConfigError unless alpha, d0 and delta are all positive.
RabiParameters rabi_parameters(const ModelParams& params);

/// Spin along +x, optionally rotated by exp(-i alpha x sigma_z):
/// plain     -> psi_in / sqrt(2) * (1, 1)
/// imprinted -> psi_in / sqrt(2) * (exp(-i alpha x), exp(+i alpha x)).
/// `psi_in` must be normalized to `n_particles` (1e-6 relative).
SpinorField build_initial_state(GridPtr grid, std::span<const double> psi_in, double n_particles,
                                InitialPhase mode, double alpha);

/// Strang split-step propagator for the spinor GPE.
///
/// One step is B(dt/2) A(dt) B(dt/2). A applies exp(-i dt (k^2/2 +- alpha k))
/// to the up/down components in momentum space. B multiplies by the scalar
/// phase exp(-i dt/2 (V(x, t + dt/2) + g1 |Psi|^2)) and applies the exact
/// rotation exp(-i (delta/2) sigma_x dt/2); the two commute. With an
/// imaginary step (dt -> -i dtau) the same kernel performs imaginary-time
/// relaxation; the caller renormalizes.
class SplitStepper {
public:
    SplitStepper(GridPtr grid, const ModelParams& params, const DriveSchedule& schedule, double dt);

    static SplitStepper imaginary_time(GridPtr grid, const ModelParams& params, double dtau);

    /// Advances `state` from t to t + dt in place. Throws NumericalError on a
    /// non-finite density, naming the step index.
    void step(SpinorField& state, double t);

    double dt() const noexcept { return dt_; }
    std::size_t steps_taken() const noexcept { return steps_taken_; }

private:
    SplitStepper(GridPtr grid, const ModelParams& params, const DriveSchedule& schedule, double dt,
                 bool imaginary);
    void potential_half_step(SpinorField& state, double t_mid) const;

    GridPtr grid_;
    ModelParams params_;
    DriveSchedule schedule_;
    double dt_;
    bool imaginary_;
    Fft fft_;
    ComplexField kinetic_up_;
    ComplexField kinetic_down_;
    Complex zeeman_diag_;
    Complex zeeman_offdiag_;
    std::size_t steps_taken_ = 0;
};

/// One real-time split step of length dt starting at time t.
SpinorField split_step(SpinorField state, double t, double dt, const ModelParams& params,
                       const DriveSchedule& schedule);

/// Implicit-midpoint (Crank-Nicolson) reference propagator.
///
/// Second-order centred differences for p^2 and alpha sigma_z p on the same
/// periodic grid; the nonlinearity uses the midpoint density
/// (|Psi^n|^2 + |Psi^{n+1}|^2)/2, resolved by fixed-point iteration. Meant
/// for small grids (n <= 512).
class CrankNicolsonStepper {
public:
    CrankNicolsonStepper(GridPtr grid, const ModelParams& params, const DriveSchedule& schedule,
                         double dt, double tol = 1e-10, int max_iterations = 100);
    ~CrankNicolsonStepper();
    CrankNicolsonStepper(CrankNicolsonStepper&&) noexcept;
    CrankNicolsonStepper& operator=(CrankNicolsonStepper&&) noexcept;

    /// Throws NumericalError if the fixed point does not converge.
    void step(SpinorField& state, double t);

    int last_iterations() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

SpinorField crank_nicolson_step(SpinorField state, double t, double dt, const ModelParams& params,
                                const DriveSchedule& schedule);

/// Mean-field energy <H> with the trap centred at `displacement`:
/// kinetic + SOC (spectral) + trap + (delta/2)<sigma_x> + (g1/2) integral |Psi|^4.
class EnergyEvaluator {
public:
    explicit EnergyEvaluator(GridPtr grid);
    double operator()(const SpinorField& state, const ModelParams& params, double displacement) const;

private:
    GridPtr grid_;
    Fft fft_;
};

double spinor_energy(const SpinorField& state, const ModelParams& params, double displacement = 0.0);

struct TrajectoryRecord {
    double t = 0.0;
    double purity = 0.0;
    double sx = 0.0;
    double sy = 0.0;
    double sz = 0.0;
    double x_sz = 0.0;
    double width = 0.0;
    double norm = 0.0;
    double energy = 0.0;
    double d = 0.0;
};

struct Snapshot {
    double t = 0.0;
    SpinorField state;
};

struct Trajectory {
    std::vector<TrajectoryRecord> records;
    std::vector<Snapshot> snapshots;
    SpinorField final_state;
    bool valid = true;
    std::string invalid_reason;
};

TrajectoryRecord observe(const SpinorField& state, double t, const ModelParams& params,
                         const DriveSchedule& schedule, const EnergyEvaluator& energy);

/// Runs the split-step propagator from t = 0 to config.t_final, recording
/// observables every `sample_stride` steps (and at the final step).
///
/// The boundary guard is checked at every sample; when it trips, the run
/// stops and the partial trajectory is returned with `valid == false`.
Trajectory evolve(const SpinorField& initial, const ModelParams& params,
                  const DriveSchedule& schedule, const EvolutionConfig& config);

} // namespace socbec
