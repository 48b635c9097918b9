#include "socbec/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "socbec/error.hpp"
#include "socbec/observables.hpp"

namespace socbec {

double DriveSchedule::displacement(double t) const noexcept {
    return mode == DriveMode::resonant_sine ? d0 * std::sin(delta * t) : 0.0;
}

DriveSchedule DriveSchedule::from(const ModelParams& params) noexcept {
    return {params.drive, params.d0, params.delta};
}

double trap_displacement(double t, const DriveSchedule& schedule) noexcept {
    return schedule.displacement(t);
}

void EvolutionConfig::validate() const {
    if (!(dt > 0.0) || dt > 1e-2) throw ConfigError("time step must lie in (0, 1e-2]", "evolution.dt");
    if (!(t_final >= 0.0) || !std::isfinite(t_final))
        throw ConfigError("final time must be non-negative", "evolution.t_final");
    if (sample_stride == 0) throw ConfigError("sample stride must be at least 1", "evolution.sample_stride");
    for (double t : snapshot_times) {
        if (!(t >= 0.0 && t <= t_final + 0.5 * dt))
            throw ConfigError("snapshot time " + std::to_string(t) + " outside [0, t_final]",
                              "evolution.snapshot_times");
    }
}

std::size_t EvolutionConfig::step_count() const {
    return static_cast<std::size_t>(std::llround(t_final / dt));
}

RabiParameters rabi_parameters(const ModelParams& params) {
    if (!(params.alpha > 0.0)) throw ConfigError("Rabi frequency needs alpha > 0", "alpha");
    if (!(params.d0 > 0.0)) throw ConfigError("Rabi frequency needs d0 > 0", "d0");
    if (!(params.delta > 0.0)) throw ConfigError("Rabi frequency needs delta > 0", "delta");
    const double omega = params.alpha * params.d0 * params.delta;
    return {omega, std::numbers::pi / omega};
}

SpinorField build_initial_state(GridPtr grid, std::span<const double> psi_in, double n_particles,
                                InitialPhase mode, double alpha) {
    if (psi_in.size() != grid->size()) throw ConfigError("initial profile does not match the grid");
    const double n_in = [&] {
        double s = 0.0;
        for (double v : psi_in) s += v * v;
        return s * grid->dx();
    }();
    if (std::abs(n_in - n_particles) > 1e-6 * n_particles) {
        throw ConfigError("initial profile norm " + std::to_string(n_in) + " differs from N = " +
                          std::to_string(n_particles));
    }
    SpinorField out(grid, n_particles);
    const auto x = grid->x();
    const double amp = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double a = amp * psi_in[j];
        if (mode == InitialPhase::imprinted) {
            out.up[j] = a * std::polar(1.0, -alpha * x[j]);
            out.down[j] = a * std::polar(1.0, alpha * x[j]);
        } else {
            out.up[j] = a;
            out.down[j] = a;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Split-step propagator

SplitStepper::SplitStepper(GridPtr grid, const ModelParams& params, const DriveSchedule& schedule,
                           double dt)
    : SplitStepper(std::move(grid), params, schedule, dt, false) {}

SplitStepper SplitStepper::imaginary_time(GridPtr grid, const ModelParams& params, double dtau) {
    return SplitStepper(std::move(grid), params, DriveSchedule{}, dtau, true);
}

SplitStepper::SplitStepper(GridPtr grid, const ModelParams& params, const DriveSchedule& schedule,
                           double dt, bool imaginary)
    : grid_(std::move(grid)), params_(params), schedule_(schedule), dt_(dt), imaginary_(imaginary),
      fft_(grid_->size()) {
    params_.validate();
    if (!std::isfinite(dt) || dt == 0.0) throw ConfigError("time step must be finite and nonzero", "dt");
    // Complex step: dt for real time, -i dtau for imaginary time.
    const Complex step = imaginary ? Complex(0.0, -dt) : Complex(dt, 0.0);
    const Complex minus_i(0.0, -1.0);
    const auto k = grid_->k();
    const double inv_n = 1.0 / static_cast<double>(grid_->size());
    kinetic_up_.resize(k.size());
    kinetic_down_.resize(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) {
        const double kin = 0.5 * k[j] * k[j];
        kinetic_up_[j] = inv_n * std::exp(minus_i * step * (kin + params_.alpha * k[j]));
        kinetic_down_[j] = inv_n * std::exp(minus_i * step * (kin - params_.alpha * k[j]));
    }
    const Complex theta = 0.25 * params_.delta * step;
    zeeman_diag_ = std::cos(theta);
    zeeman_offdiag_ = minus_i * std::sin(theta);
}

void SplitStepper::potential_half_step(SpinorField& state, double t_mid) const {
    const auto x = grid_->x();
    double coupling = params_.g1N / state.particle_number;
    // In imaginary time the norm drifts within a step; the nonlinearity sees
    // the density rescaled to N so both half-steps act alike.
    if (imaginary_) coupling *= state.particle_number / norm(state);
    const double d = schedule_.displacement(t_mid);
    const double h = 0.5 * dt_;
    const bool trap = params_.trap_on;
    const bool rotate = params_.delta != 0.0;
    double total = 0.0;
    for (std::size_t j = 0; j < state.size(); ++j) {
        Complex u = state.up[j];
        Complex v = state.down[j];
        const double rho = std::norm(u) + std::norm(v);
        total += rho;
        const double y = x[j] - d;
        const double arg = (trap ? 0.5 * y * y : 0.0) + coupling * rho;
        const Complex phase = imaginary_ ? Complex(std::exp(-h * arg), 0.0) : std::polar(1.0, -h * arg);
        if (rotate) {
            const Complex nu = zeeman_diag_ * u + zeeman_offdiag_ * v;
            const Complex nv = zeeman_offdiag_ * u + zeeman_diag_ * v;
            u = nu;
            v = nv;
        }
        state.up[j] = phase * u;
        state.down[j] = phase * v;
    }
    if (!std::isfinite(total)) {
        throw NumericalError("non-finite density at step " + std::to_string(steps_taken_));
    }
}

void SplitStepper::step(SpinorField& state, double t) {
    if (state.grid->size() != grid_->size()) throw ConfigError("state does not match the stepper grid");
    const double t_mid = t + 0.5 * dt_;
    potential_half_step(state, t_mid);
    fft_.forward(state.up);
    fft_.forward(state.down);
    for (std::size_t j = 0; j < state.size(); ++j) {
        state.up[j] *= kinetic_up_[j];
        state.down[j] *= kinetic_down_[j];
    }
    fft_.inverse_unscaled(state.up);
    fft_.inverse_unscaled(state.down);
    potential_half_step(state, t_mid);
    ++steps_taken_;
}

SpinorField split_step(SpinorField state, double t, double dt, const ModelParams& params,
                       const DriveSchedule& schedule) {
    SplitStepper stepper(state.grid, params, schedule, dt);
    stepper.step(state, t);
    return state;
}

// ---------------------------------------------------------------------------
// Energy

EnergyEvaluator::EnergyEvaluator(GridPtr grid) : grid_(std::move(grid)), fft_(grid_->size()) {}

double EnergyEvaluator::operator()(const SpinorField& state, const ModelParams& params,
                                   double displacement) const {
    const auto k = grid_->k();
    const auto x = grid_->x();
    const double dx = grid_->dx();
    double kinetic = 0.0;
    ComplexField work = state.up;
    fft_.forward(work);
    for (std::size_t j = 0; j < work.size(); ++j) kinetic += std::norm(work[j]) * (0.5 * k[j] * k[j] + params.alpha * k[j]);
    work = state.down;
    fft_.forward(work);
    for (std::size_t j = 0; j < work.size(); ++j) kinetic += std::norm(work[j]) * (0.5 * k[j] * k[j] - params.alpha * k[j]);
    kinetic *= dx / static_cast<double>(grid_->size());

    const double coupling = params.g1N / state.particle_number;
    double trap = 0.0;
    double interaction = 0.0;
    Complex overlap{};
    for (std::size_t j = 0; j < state.size(); ++j) {
        const double rho = std::norm(state.up[j]) + std::norm(state.down[j]);
        const double y = x[j] - displacement;
        trap += 0.5 * y * y * rho;
        interaction += rho * rho;
        overlap += std::conj(state.up[j]) * state.down[j];
    }
    if (!params.trap_on) trap = 0.0;
    // (delta/2) <Psi|sigma_x|Psi> = delta Re(rho12).
    return kinetic + dx * (trap + 0.5 * coupling * interaction + params.delta * overlap.real());
}

double spinor_energy(const SpinorField& state, const ModelParams& params, double displacement) {
    return EnergyEvaluator(state.grid)(state, params, displacement);
}

// ---------------------------------------------------------------------------
// Trajectories

TrajectoryRecord observe(const SpinorField& state, double t, const ModelParams& params,
                         const DriveSchedule& schedule, const EnergyEvaluator& energy) {
    const SpinDensityMatrix rho = spin_density_matrix(state);
    const BlochRecord bloch = bloch_vector(rho, t);
    TrajectoryRecord r;
    r.t = t;
    r.purity = purity(rho);
    r.sx = bloch.sx;
    r.sy = bloch.sy;
    r.sz = bloch.sz;
    r.x_sz = spin_dipole_moment(state);
    r.width = condensate_width(state);
    r.norm = rho.trace();
    r.d = schedule.displacement(t);
    r.energy = energy(state, params, r.d);
    return r;
}

Trajectory evolve(const SpinorField& initial, const ModelParams& params,
                  const DriveSchedule& schedule, const EvolutionConfig& config) {
    config.validate();
    const std::size_t n_steps = config.step_count();

    std::vector<std::pair<std::size_t, double>> snapshot_steps;
    for (double t : config.snapshot_times) {
        snapshot_steps.emplace_back(static_cast<std::size_t>(std::llround(t / config.dt)), t);
    }
    std::sort(snapshot_steps.begin(), snapshot_steps.end());
    auto next_snapshot = snapshot_steps.begin();

    Trajectory traj;
    SpinorField state = initial;
    SplitStepper stepper(state.grid, params, schedule, config.dt);
    const EnergyEvaluator energy(state.grid);

    for (std::size_t n = 0;; ++n) {
        const double t = static_cast<double>(n) * config.dt;
        const bool sample = n % config.sample_stride == 0 || n == n_steps;
        while (next_snapshot != snapshot_steps.end() && next_snapshot->first == n) {
            traj.snapshots.push_back({t, state});
            ++next_snapshot;
        }
        if (sample) {
            traj.records.push_back(observe(state, t, params, schedule, energy));
            if (!boundary_guard_ok(state)) {
                traj.valid = false;
                traj.invalid_reason = "boundary density guard tripped at t = " + std::to_string(t) +
                                      " (ratio " + std::to_string(boundary_density_ratio(state)) + ")";
                break;
            }
        }
        if (n == n_steps) break;
        stepper.step(state, t);
    }
    traj.final_state = std::move(state);
    return traj;
}

} // namespace socbec
