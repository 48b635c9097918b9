#include "socbec/ground_state.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>

#include "socbec/dynamics.hpp"
#include "socbec/observables.hpp"
#include "socbec/spectral.hpp"

namespace socbec {
namespace {

constexpr double sqrt_two_pi = 2.5066282746310002; // sqrt(2 pi)

double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Ladder of phi_0..phi_{max_order} evaluated at every node; only even orders kept.
std::vector<RealField> even_hermite_functions(const SpatialGrid& grid, int n_max) {
    const auto x = grid.x();
    const int max_order = 2 * n_max;
    std::vector<RealField> even(static_cast<std::size_t>(n_max) + 1, RealField(x.size()));
    const double norm0 = std::pow(std::numbers::pi, -0.25);
    for (std::size_t j = 0; j < x.size(); ++j) {
        double prev = 0.0;
        double cur = norm0 * std::exp(-0.5 * x[j] * x[j]);
        even[0][j] = cur;
        for (int n = 0; n < max_order; ++n) {
            const double next = std::sqrt(2.0 / (n + 1)) * x[j] * cur - std::sqrt(static_cast<double>(n) / (n + 1)) * prev;
            prev = cur;
            cur = next;
            if ((n + 1) % 2 == 0) even[static_cast<std::size_t>((n + 1) / 2)][j] = cur;
        }
    }
    return even;
}

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace

std::string to_string(GroundMethod method) {
    switch (method) {
    case GroundMethod::hermite: return "hermite";
    case GroundMethod::imaginary_time: return "imaginary_time";
    case GroundMethod::thomas_fermi: return "thomas_fermi";
    case GroundMethod::gaussian: return "gaussian";
    }
    return "unknown";
}

GroundMethod parse_ground_method(std::string_view text) {
    if (text == "hermite") return GroundMethod::hermite;
    if (text == "imaginary_time") return GroundMethod::imaginary_time;
    if (text == "thomas_fermi") return GroundMethod::thomas_fermi;
    if (text == "gaussian") return GroundMethod::gaussian;
    throw ConfigError("expected hermite|imaginary_time|thomas_fermi|gaussian, got '" + std::string(text) + "'",
                      "ground.method");
}

std::vector<RealField> hermite_basis_functions(const SpatialGrid& grid, int n_max) {
    if (n_max < 0) throw ConfigError("n_max must be non-negative", "n_max");
    auto basis = even_hermite_functions(grid, n_max);
    for (std::size_t n = 0; n < basis.size(); ++n) {
        const double edge = std::max(std::abs(basis[n].front()), std::abs(basis[n].back()));
        if (edge > 1e-12) {
            throw ConfigError("grid too narrow for Hermite order " + std::to_string(2 * n) +
                              " (boundary value " + std::to_string(edge) + ")");
        }
    }
    return basis;
}

RealField HermiteExpansion::sample(const SpatialGrid& grid) const {
    const auto basis = even_hermite_functions(grid, n_max);
    RealField psi(grid.size(), 0.0);
    for (std::size_t n = 0; n < basis.size(); ++n) {
        for (std::size_t j = 0; j < psi.size(); ++j) psi[j] += coefficients[n] * basis[n][j];
    }
    double s = 0.0;
    for (double v : psi) s += v * v;
    const double scale = std::sqrt(particle_number / (s * grid.dx()));
    for (double& v : psi) v *= scale;
    return psi;
}

double total_energy_functional(const SpatialGrid& grid, std::span<const double> psi, double n_particles,
                               double g1N) {
    if (psi.size() != grid.size()) throw ConfigError("field does not match the grid");
    double n = 0.0;
    for (double v : psi) n += v * v;
    n *= grid.dx();
    if (std::abs(n - n_particles) > 1e-6 * n_particles) {
        throw ConfigError("field is not normalized (norm " + std::to_string(n) + ", N = " +
                          std::to_string(n_particles) + ")");
    }
    const RealField dpsi = spectral_derivative(grid, psi);
    const auto x = grid.x();
    const double g1 = g1N / n_particles;
    double sum = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) {
        const double p2 = psi[j] * psi[j];
        sum += dpsi[j] * dpsi[j] + x[j] * x[j] * p2 + g1 * p2 * p2;
    }
    return 0.5 * sum * grid.dx();
}

double condensate_width(const SpatialGrid& grid, std::span<const double> psi, double n_particles) {
    const auto x = grid.x();
    double sum = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) sum += x[j] * x[j] * psi[j] * psi[j];
    return std::sqrt(2.0 * sum * grid.dx() / n_particles);
}

RealField gaussian_profile(const SpatialGrid& grid, double w, double n_particles, double center) {
    if (!(w > 0.0)) throw ConfigError("Gaussian width must be positive", "w");
    const auto x = grid.x();
    const double amp = std::sqrt(n_particles / (std::sqrt(std::numbers::pi) * w));
    RealField out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double y = (x[j] - center) / w;
        out[j] = amp * std::exp(-0.5 * y * y);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hermite-basis minimization

HermiteEnergyModel::HermiteEnergyModel(int n_max, double g1N) : n_max_(n_max), g1N_(g1N) {
    if (n_max < 0) throw ConfigError("n_max must be non-negative", "ground.n_max");
    const double turning = std::sqrt(4.0 * n_max + 1.0);
    const double half = turning + 10.0;
    // exp(-x^2/2) underflows beyond |x| ~ 38.
    if (half > 38.0) {
        throw ConfigError("n_max = " + std::to_string(n_max) + " exceeds the double-precision Hermite range",
                          "ground.n_max");
    }
    // f^4 carries four times the bandwidth of f; resolve it exactly.
    const double dx_target = std::numbers::pi / (2.0 * (turning + 8.0));
    const auto points = std::max<std::size_t>(64, next_power_of_two(static_cast<std::size_t>(std::ceil(2.0 * half / dx_target))));
    grid_ = make_grid(-half, half, points);
    basis_ = hermite_basis_functions(*grid_, n_max);
}

RealField HermiteEnergyModel::shape(std::span<const double> c) const {
    RealField f(grid_->size(), 0.0);
    for (std::size_t n = 0; n < basis_.size(); ++n) {
        if (c[n] == 0.0) continue;
        const auto& phi = basis_[n];
        for (std::size_t j = 0; j < f.size(); ++j) f[j] += c[n] * phi[j];
    }
    return f;
}

double HermiteEnergyModel::energy(std::span<const double> c) const {
    double linear = 0.0;
    for (std::size_t n = 0; n < basis_.size(); ++n) linear += c[n] * c[n] * (2.0 * static_cast<double>(n) + 0.5);
    const RealField f = shape(c);
    double quartic = 0.0;
    for (double v : f) quartic += v * v * v * v;
    return linear + 0.5 * g1N_ * quartic * grid_->dx();
}

std::vector<double> HermiteEnergyModel::gradient(std::span<const double> c) const {
    const RealField f = shape(c);
    RealField f3(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) f3[j] = f[j] * f[j] * f[j];
    std::vector<double> g(basis_.size());
    for (std::size_t n = 0; n < basis_.size(); ++n) {
        g[n] = 2.0 * c[n] * (2.0 * static_cast<double>(n) + 0.5) + 2.0 * g1N_ * dot(f3, basis_[n]) * grid_->dx();
    }
    return g;
}

namespace {

struct PcgOutcome {
    std::size_t iterations = 0;
    bool converged = false;
    double energy = 0.0;
};

// Preconditioned Polak-Ribiere conjugate gradients on the unit sphere |c| = 1.
// Each line search runs along the great circle cos(t) c + sin(t) u, where the
// energy is cheap to evaluate from the two precomputed shapes.
PcgOutcome minimize_on_sphere(const HermiteEnergyModel& model, std::vector<double>& c, double g1N,
                              double tol, int max_iterations) {
    const std::size_t m = c.size();
    const double dx = model.grid()->dx();
    std::vector<double> lambda(m);
    for (std::size_t n = 0; n < m; ++n) lambda[n] = 2.0 * static_cast<double>(n) + 0.5;

    const auto project = [&](std::vector<double>& v) {
        const double p = dot(v, c);
        for (std::size_t n = 0; n < m; ++n) v[n] -= p * c[n];
    };

    PcgOutcome out;
    double energy = model.energy(c);
    std::vector<double> grad = model.gradient(c);
    std::vector<double> dir(m, 0.0);
    std::vector<double> prev_gt;
    std::vector<double> prev_z;
    double last_step = 0.05;

    for (int it = 0; it < max_iterations; ++it) {
        out.iterations = static_cast<std::size_t>(it);
        std::vector<double> gt = grad;
        project(gt);
        const double gnorm = std::sqrt(dot(gt, gt));
        if (gnorm < tol) {
            out.converged = true;
            break;
        }
        std::vector<double> z(m);
        for (std::size_t n = 0; n < m; ++n) z[n] = gt[n] / (2.0 * lambda[n] + 1.0);
        project(z);

        double beta = 0.0;
        if (!prev_gt.empty()) {
            double num = 0.0;
            for (std::size_t n = 0; n < m; ++n) num += z[n] * (gt[n] - prev_gt[n]);
            beta = std::max(0.0, num / dot(prev_z, prev_gt));
        }
        project(dir);
        for (std::size_t n = 0; n < m; ++n) dir[n] = -z[n] + beta * dir[n];
        if (dot(dir, gt) >= 0.0) {
            for (std::size_t n = 0; n < m; ++n) dir[n] = -z[n];
        }
        const double dnorm = std::sqrt(dot(dir, dir));
        std::vector<double> u(m);
        for (std::size_t n = 0; n < m; ++n) u[n] = dir[n] / dnorm;

        const RealField fc = model.shape(c);
        const RealField fu = model.shape(u);
        double lcc = 0.0, lcu = 0.0, luu = 0.0;
        for (std::size_t n = 0; n < m; ++n) {
            lcc += lambda[n] * c[n] * c[n];
            lcu += lambda[n] * c[n] * u[n];
            luu += lambda[n] * u[n] * u[n];
        }
        // Directional derivative of the energy along the circle; its first
        // zero is the line minimum. Root finding on the slope stays accurate
        // where energy differences drown in roundoff.
        const auto slope = [&](double t) {
            const double cs = std::cos(t);
            const double sn = std::sin(t);
            double cubic = 0.0;
            for (std::size_t j = 0; j < fc.size(); ++j) {
                const double f = cs * fc[j] + sn * fu[j];
                cubic += f * f * f * (cs * fu[j] - sn * fc[j]);
            }
            return 2.0 * (cs * cs - sn * sn) * lcu + 2.0 * cs * sn * (luu - lcc) + 2.0 * g1N * cubic * dx;
        };

        // Stagnation at the roundoff floor: no descent left along the circle.
        if (!(slope(0.0) < 0.0)) break;
        constexpr double max_step = std::numbers::pi / 2.0;
        double hi = std::min(2.0 * last_step, max_step);
        while (slope(hi) < 0.0 && hi < max_step) hi = std::min(2.0 * hi, max_step);
        double step = hi;
        if (slope(hi) >= 0.0) {
            std::uintmax_t evals = 100;
            const auto [lo_root, hi_root] =
                boost::math::tools::toms748_solve(slope, 0.0, hi, boost::math::tools::eps_tolerance<double>(50), evals);
            step = 0.5 * (lo_root + hi_root);
        }
        if (!(step > 0.0)) break;
        last_step = std::max(step, 1e-8);
        const double cs = std::cos(step);
        const double sn = std::sin(step);
        for (std::size_t n = 0; n < m; ++n) {
            const double old = c[n];
            c[n] = cs * old + sn * u[n];
            // Carry the search direction along the circle to the new point.
            dir[n] = dnorm * (cs * u[n] - sn * old);
        }
        const double cn = std::sqrt(dot(c, c));
        for (double& v : c) v /= cn;
        prev_gt = std::move(gt);
        prev_z = std::move(z);
        energy = model.energy(c);
        grad = model.gradient(c);
    }
    out.energy = energy;
    return out;
}

std::vector<double> project_gaussian(const HermiteEnergyModel& model, double w) {
    const auto& grid = *model.grid();
    const RealField g = gaussian_profile(grid, w, 1.0);
    const auto basis = even_hermite_functions(grid, model.n_max());
    std::vector<double> c(basis.size());
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = dot(g, basis[n]) * grid.dx();
    const double cn = std::sqrt(dot(c, c));
    for (double& v : c) v /= cn;
    return c;
}

} // namespace

HermiteSolution minimize_hermite(double g1N, const HermiteOptions& options) {
    if (!(g1N >= 0.0) || !std::isfinite(g1N)) throw ConfigError("interaction must be non-negative", "g1N");
    if (!(options.tol > 0.0)) throw ConfigError("tolerance must be positive", "ground.tol");
    if (!(options.particle_number > 0.0)) throw ConfigError("particle number must be positive", "particle_number");

    int n_max = options.n_max;
    std::vector<double> c;
    std::size_t total_iterations = 0;
    for (;;) {
        const HermiteEnergyModel model(n_max, g1N);
        if (c.empty()) {
            c = project_gaussian(model, gaussian_variational(g1N).width);
        } else {
            c.resize(static_cast<std::size_t>(n_max) + 1, 0.0);
        }
        const PcgOutcome run = minimize_on_sphere(model, c, g1N, options.tol, options.max_iterations);
        total_iterations += run.iterations;
        if (c[0] < 0.0) {
            for (double& v : c) v = -v;
        }
        HermiteExpansion expansion{c, n_max, options.particle_number};
        if (!run.converged) {
            throw HermiteConvergenceError("Hermite minimization did not converge after " +
                                              std::to_string(run.iterations) + " iterations",
                                          expansion);
        }
        const bool truncated_ok = n_max == 0 || std::abs(c.back()) < 1e-3;
        if (truncated_ok) {
            GroundStateResult result;
            result.grid = model.grid();
            result.psi0 = model.shape(c);
            const double amp = std::sqrt(options.particle_number);
            for (double& v : result.psi0) v *= amp;
            result.energy = options.particle_number * run.energy;
            result.width = condensate_width(*result.grid, result.psi0, options.particle_number);
            result.method = GroundMethod::hermite;
            result.particle_number = options.particle_number;
            result.n_max = n_max;
            result.converged = true;
            result.iterations = total_iterations;
            return {std::move(expansion), std::move(result)};
        }
        if (!options.grow || n_max >= options.max_n_max) {
            throw ConfigError("|C_" + std::to_string(2 * n_max) + "| = " + std::to_string(std::abs(c.back())) +
                                  " >= 1e-3; increase n_max",
                              "ground.n_max");
        }
        n_max = std::min(2 * std::max(n_max, 1), options.max_n_max);
    }
}

// ---------------------------------------------------------------------------
// Imaginary-time oracle

GroundStateResult imaginary_time_ground_state(double g1N, GridPtr grid, const ImaginaryTimeOptions& options) {
    if (!(g1N >= 0.0)) throw ConfigError("interaction must be non-negative", "g1N");
    if (!(options.dtau > 0.0) || options.dtau > 1e-3) throw ConfigError("dtau must lie in (0, 1e-3]", "dtau");
    if (!(options.tol > 0.0)) throw ConfigError("tolerance must be positive", "tol");
    if (options.check_interval == 0) throw ConfigError("check interval must be positive", "check_interval");
    const double n_particles = options.particle_number;

    ModelParams params;
    params.g1N = g1N;
    params.trap_on = true;

    SpinorField state(grid, n_particles);
    const RealField start = options.initial_guess
                                ? *options.initial_guess
                                : gaussian_profile(*grid, gaussian_variational(g1N).width, n_particles);
    if (start.size() != grid->size()) throw ConfigError("initial guess does not match the grid");
    for (std::size_t j = 0; j < start.size(); ++j) state.up[j] = start[j];
    state = normalize(std::move(state), n_particles);

    SplitStepper stepper = SplitStepper::imaginary_time(grid, params, options.dtau);
    const EnergyEvaluator energy(grid);
    std::vector<double> history{energy(state, params, 0.0)};

    for (std::size_t step = 1; step <= options.max_steps; ++step) {
        stepper.step(state, 0.0);
        state = normalize(std::move(state), n_particles);
        if (step % options.check_interval != 0) continue;
        const double e = energy(state, params, 0.0);
        const double previous = history.back();
        history.push_back(e);
        if (std::abs(e - previous) < options.tol * std::abs(e)) {
            GroundStateResult result;
            result.grid = grid;
            result.psi0.resize(grid->size());
            for (std::size_t j = 0; j < grid->size(); ++j) result.psi0[j] = state.up[j].real();
            if (std::accumulate(result.psi0.begin(), result.psi0.end(), 0.0) < 0.0) {
                for (double& v : result.psi0) v = -v;
            }
            result.energy = e;
            result.width = condensate_width(*grid, result.psi0, n_particles);
            result.method = GroundMethod::imaginary_time;
            result.particle_number = n_particles;
            result.converged = true;
            result.iterations = step;
            result.energy_history = std::move(history);
            return result;
        }
    }
    throw ImaginaryTimeError("imaginary-time relaxation exceeded " + std::to_string(options.max_steps) + " steps",
                             std::move(history));
}

// ---------------------------------------------------------------------------
// Closed-form limits

double thomas_fermi_radius(double g1N) { return std::cbrt(1.5 * g1N); }

GroundStateResult thomas_fermi_profile(double g1N, GridPtr grid, double n_particles) {
    if (!(g1N > 0.0)) throw ConfigError("Thomas-Fermi profile needs g1N > 0", "g1N");
    const double w = thomas_fermi_radius(g1N);
    const double amp = std::sqrt(3.0 * n_particles / (4.0 * w * w * w));
    const auto x = grid->x();
    GroundStateResult r;
    r.grid = grid;
    r.psi0.resize(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double inside = w * w - x[j] * x[j];
        r.psi0[j] = inside > 0.0 ? amp * std::sqrt(inside) : 0.0;
    }
    r.energy = 0.3 * n_particles * w * w;
    r.width = condensate_width(*grid, r.psi0, n_particles);
    r.method = GroundMethod::thomas_fermi;
    r.particle_number = n_particles;
    return r;
}

double gaussian_energy(double w, double g1N, double n_particles) {
    return n_particles * (0.25 * (w * w + 1.0 / (w * w)) + g1N / (2.0 * sqrt_two_pi * w));
}

double gaussian_energy_derivative(double w, double g1N, double n_particles) {
    return n_particles * (0.5 * (w - 1.0 / (w * w * w)) - g1N / (2.0 * sqrt_two_pi * w * w));
}

VariationalGaussian gaussian_variational(double g1N, double n_particles) {
    if (!(g1N >= 0.0) || !std::isfinite(g1N)) throw ConfigError("interaction must be non-negative", "g1N");
    VariationalGaussian out;
    out.particle_number = n_particles;
    if (g1N == 0.0) {
        out.width = 1.0;
    } else {
        const auto residual = [g1N](double w) { return gaussian_energy_derivative(w, g1N, 1.0); };
        const double hi = 1.0 + 2.0 * std::cbrt(g1N / sqrt_two_pi);
        std::uintmax_t iterations = 200;
        const auto [a, b] = boost::math::tools::toms748_solve(residual, 1.0, hi, boost::math::tools::eps_tolerance<double>(52),
                                                              iterations);
        out.width = std::abs(residual(a)) < std::abs(residual(b)) ? a : b;
    }
    out.energy = gaussian_energy(out.width, g1N, n_particles);
    return out;
}

SpinDipoleFrequency spin_dipole_frequency(double g1N) {
    const double w = gaussian_variational(g1N).width;
    const double radicand = 1.0 - g1N / (sqrt_two_pi * w * w * w);
    if (radicand < 0.0) throw NumericalError("negative spin-dipole radicand; width is inconsistent");
    SpinDipoleFrequency out;
    out.exact = std::sqrt(radicand);
    if (g1N > 0.0) out.asymptotic = std::pow(sqrt_two_pi / g1N, 2.0 / 3.0);
    return out;
}

double shifted_gaussian_energy(double g1N, double w, double xi, double n_particles) {
    if (!(w > 0.0)) throw ConfigError("width must be positive", "w");
    if (std::abs(xi) > 0.1 * w) {
        throw ConfigError("shift must satisfy |xi| <= 0.1 w for the quadratic expansion", "xi");
    }
    return 0.5 * n_particles * xi * xi * (1.0 - g1N / (sqrt_two_pi * w * w * w));
}

} // namespace socbec
