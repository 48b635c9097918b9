#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "socbec/dynamics.hpp"
#include "socbec/error.hpp"
#include "socbec/ground_state.hpp"

using namespace socbec;
using doctest::Approx;

namespace {

const double sqrt_two_pi = std::sqrt(2 * std::numbers::pi);

// phi_n from the explicit Hermite polynomial, independent of the recurrence.
double phi_explicit(unsigned n, double x) {
    const double norm = 1.0 / std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0) * std::sqrt(std::numbers::pi));
    return norm * std::hermite(n, x) * std::exp(-x * x / 2);
}

double quad(const SpatialGrid& g, const RealField& a, const RealField& b) {
    double s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s * g.dx();
}

RealField scaled(RealField f, double s) {
    for (double& v : f) v *= s;
    return f;
}

} // namespace

TEST_CASE("even Hermite functions") {
    const auto g = make_grid(-16, 16, 512);
    const auto basis = hermite_basis_functions(*g, 10);
    REQUIRE(basis.size() == 11);
    for (std::size_t j = 0; j < g->size(); j += 17) {
        const double x = g->x()[j];
        CHECK(basis[0][j] == Approx(std::pow(std::numbers::pi, -0.25) * std::exp(-x * x / 2)).epsilon(1e-14));
        for (unsigned n = 0; n <= 10; ++n) CHECK(basis[n][j] == Approx(phi_explicit(2 * n, x)).epsilon(1e-9).scale(1));
    }
    for (std::size_t a = 0; a < basis.size(); ++a) {
        for (std::size_t b = 0; b < basis.size(); ++b) {
            CHECK(quad(*g, basis[a], basis[b]) == Approx(a == b ? 1.0 : 0.0).epsilon(1e-8).scale(1));
        }
    }
    // H_2(0) = -2 with normalization (sqrt(pi) 2! 2^2)^{-1/2}.
    const double phi2_at_0 = -2.0 / std::sqrt(std::sqrt(std::numbers::pi) * 2 * 4);
    CHECK(phi2_at_0 == Approx(-std::pow(std::numbers::pi, -0.25) / std::sqrt(2.0)));
    CHECK(basis[1][256] == Approx(phi2_at_0).epsilon(1e-13));
}

TEST_CASE("narrow grid names the offending order") {
    const auto g = make_grid(-10, 10, 128);
    CHECK_NOTHROW(hermite_basis_functions(*g, 1));
    try {
        hermite_basis_functions(*g, 40);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("order") != std::string::npos);
    }
}

TEST_CASE("energy functional on oscillator states") {
    const auto g = make_grid(-16, 16, 512);
    const auto basis = hermite_basis_functions(*g, 1);
    const double n = 3.0;
    CHECK(total_energy_functional(*g, scaled(basis[0], std::sqrt(n)), n, 0.0) == Approx(n / 2).epsilon(1e-12));
    CHECK(total_energy_functional(*g, scaled(basis[1], std::sqrt(n)), n, 0.0) == Approx(5 * n / 2).epsilon(1e-12));

    // Brute-force quartic integral of phi_0 against its closed form 1/sqrt(2 pi).
    double q = 0;
    for (std::size_t j = 0; j < g->size(); ++j) q += std::pow(basis[0][j], 4) * g->dx();
    CHECK(q == Approx(1 / sqrt_two_pi).epsilon(1e-12));
    const double expected = n * (0.5 + 40 * q / 2);
    CHECK(expected / n == Approx(8.479).epsilon(1e-4));
    CHECK(total_energy_functional(*g, scaled(basis[0], std::sqrt(n)), n, 40.0) == Approx(expected).epsilon(1e-12));

    CHECK_THROWS_AS(total_energy_functional(*g, scaled(basis[0], 2.0), 1.0, 0.0), ConfigError);
}

TEST_CASE("noninteracting minimum") {
    const auto s = minimize_hermite(0.0);
    CHECK(s.expansion.coefficients[0] == Approx(1.0).epsilon(1e-12));
    for (std::size_t n = 1; n < s.expansion.coefficients.size(); ++n) CHECK(std::abs(s.expansion.coefficients[n]) < 1e-10);
    CHECK(s.result.energy == Approx(0.5).epsilon(1e-10));
    CHECK(s.result.width == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Hermite minimizer invariants") {
    HermiteOptions opts;
    opts.particle_number = 2.0;
    for (double g1N : {10.0, 40.0}) {
        const auto s = minimize_hermite(g1N, opts);
        const auto& c = s.expansion.coefficients;
        double sum = 0;
        for (double v : c) sum += v * v;
        CHECK(sum == Approx(1.0).epsilon(1e-12));
        CHECK(c[0] > 0);
        CHECK(std::abs(c.back()) < 1e-3);
        CHECK(s.result.converged);
        CHECK(s.result.width > 0);
        // The shape does not depend on N; energy is extensive.
        const auto unit = minimize_hermite(g1N);
        CHECK(s.result.energy == Approx(2 * unit.result.energy).epsilon(1e-10));
        CHECK(s.result.width == Approx(unit.result.width).epsilon(1e-8));
    }
}

TEST_CASE("truncation error without growth") {
    HermiteOptions opts;
    opts.n_max = 2;
    opts.grow = false;
    CHECK_THROWS_AS(minimize_hermite(200.0, opts), ConfigError);
}

TEST_CASE("coefficient gradient matches finite differences of the energy functional") {
    const int n_max = 6;
    const double g1N = 25.0;
    const HermiteEnergyModel model(n_max, g1N);
    std::mt19937 rng(7);
    std::normal_distribution<double> dist;
    std::vector<double> c(n_max + 1);
    for (auto& v : c) v = dist(rng) / (1 + 2.0 * (&v - c.data()));
    double cn = 0;
    for (double v : c) cn += v * v;
    for (auto& v : c) v /= std::sqrt(cn);

    // Unconstrained gradient against central differences of the model energy.
    const auto grad = model.gradient(c);
    for (int n = 0; n <= n_max; ++n) {
        const double h = 1e-5;
        auto cp = c, cm = c;
        cp[n] += h;
        cm[n] -= h;
        CHECK(grad[n] == Approx((model.energy(cp) - model.energy(cm)) / (2 * h)).epsilon(1e-6));
    }

    // Tangent derivative against the grid functional with spectral kinetic term.
    const auto g = make_grid(-16, 16, 512);
    const auto basis = hermite_basis_functions(*g, n_max);
    const auto energy_of = [&](const std::vector<double>& coeffs) {
        RealField psi(g->size(), 0.0);
        for (int n = 0; n <= n_max; ++n)
            for (std::size_t j = 0; j < psi.size(); ++j) psi[j] += coeffs[n] * basis[n][j];
        double s = 0;
        for (double v : psi) s += v * v;
        return total_energy_functional(*g, scaled(psi, 1 / std::sqrt(s * g->dx())), 1.0, g1N);
    };
    std::vector<double> v(n_max + 1);
    for (auto& x : v) x = dist(rng);
    double vc = 0, gv = 0;
    for (int n = 0; n <= n_max; ++n) vc += v[n] * c[n];
    for (int n = 0; n <= n_max; ++n) v[n] -= vc * c[n];
    for (int n = 0; n <= n_max; ++n) gv += grad[n] * v[n];
    const double h = 1e-5;
    auto cp = c, cm = c;
    for (int n = 0; n <= n_max; ++n) {
        cp[n] += h * v[n];
        cm[n] -= h * v[n];
    }
    CHECK(gv == Approx((energy_of(cp) - energy_of(cm)) / (2 * h)).epsilon(1e-6));
    CHECK(model.energy(c) == Approx(energy_of(c)).epsilon(1e-12));
}

TEST_CASE("variational ordering") {
    const auto g = make_grid(-20, 20, 1024);
    for (double g1N : {0.0, 10.0, 40.0, 100.0}) {
        const double e_hermite = minimize_hermite(g1N).result.energy;
        const auto gauss = gaussian_variational(g1N);
        const double e_gauss = total_energy_functional(*g, gaussian_profile(*g, gauss.width, 1.0), 1.0, g1N);
        CHECK(e_gauss == Approx(gauss.energy).epsilon(1e-10));
        CHECK(e_hermite <= e_gauss + 1e-9);
        CHECK(e_gauss <= 0.5 + g1N / (2 * sqrt_two_pi) + 1e-12);
    }
}

TEST_CASE("Gaussian variational width") {
    const auto v0 = gaussian_variational(0.0);
    CHECK(v0.width == 1.0);
    CHECK(v0.energy == Approx(0.5));

    const auto v = gaussian_variational(40.0);
    const double w_asym = std::cbrt(40 / sqrt_two_pi) + sqrt_two_pi / 120;
    CHECK(w_asym == Approx(2.538).epsilon(1e-3));
    CHECK(v.width == Approx(w_asym).epsilon(0.02));
    CHECK(v.energy == Approx(0.75 * std::pow(40 / sqrt_two_pi, 2.0 / 3)).epsilon(0.03));
    CHECK(std::abs(gaussian_energy_derivative(v.width, 40.0)) < 1e-10);
    for (double g1N : {1.0, 60.0, 1000.0}) CHECK(std::abs(gaussian_energy_derivative(gaussian_variational(g1N).width, g1N)) < 1e-10);
    CHECK_THROWS_AS(gaussian_variational(-1.0), ConfigError);
}

TEST_CASE("Thomas-Fermi profile") {
    const auto g = make_grid(-16, 16, 4096);
    const auto tf = thomas_fermi_profile(40.0, g, 2.0);
    const double w = thomas_fermi_radius(40.0);
    CHECK(w == Approx(std::cbrt(60.0)).epsilon(1e-15));
    CHECK(w == Approx(3.9149).epsilon(1e-4));
    // Peak density from x = 0, total weight by brute-force quadrature.
    CHECK(tf.psi0[2048] * tf.psi0[2048] == Approx(3 * 2.0 / (4 * w)).epsilon(1e-13));
    double n = 0, x2 = 0;
    for (std::size_t j = 0; j < g->size(); ++j) {
        n += tf.psi0[j] * tf.psi0[j] * g->dx();
        x2 += g->x()[j] * g->x()[j] * tf.psi0[j] * tf.psi0[j] * g->dx();
    }
    CHECK(n == Approx(2.0).epsilon(1e-3));
    CHECK(std::sqrt(2 * x2 / 2.0) == Approx(w * std::sqrt(0.4)).epsilon(1e-3));
    CHECK(tf.width == Approx(w * std::sqrt(0.4)).epsilon(1e-3));
    CHECK(tf.energy == Approx(0.3 * 2.0 * w * w));
    const auto edge = make_grid(-w, 3 * w, 64);
    CHECK(thomas_fermi_profile(40.0, edge).psi0[0] == 0.0);
    CHECK_THROWS_AS(thomas_fermi_profile(0.0, g), ConfigError);
}

TEST_CASE("condensate width") {
    const auto g = make_grid(-16, 16, 512);
    CHECK(condensate_width(*g, gaussian_profile(*g, 1.0, 1.0), 1.0) == Approx(1.0).epsilon(1e-12));
    double last = 0;
    for (double g1N : {0.0, 10.0, 20.0, 40.0, 60.0}) {
        const double w = minimize_hermite(g1N).result.width;
        CHECK(w > last);
        last = w;
    }
}

TEST_CASE("spin-dipole frequency") {
    const auto f0 = spin_dipole_frequency(0.0);
    CHECK(f0.exact == 1.0);
    CHECK_FALSE(f0.asymptotic.has_value());
    const auto f = spin_dipole_frequency(60.0);
    REQUIRE(f.asymptotic.has_value());
    CHECK(*f.asymptotic == Approx(0.1204).epsilon(1e-3));
    CHECK(f.exact == Approx(*f.asymptotic).epsilon(0.15));
    const double w = gaussian_variational(60.0).width;
    CHECK(f.exact == Approx(1 / (w * w)).epsilon(1e-9));
}

TEST_CASE("shifted-Gaussian energy") {
    CHECK(shifted_gaussian_energy(10.0, 1.5, 0.0) == 0.0);
    CHECK(shifted_gaussian_energy(0.0, 1.0, 0.05, 3.0) == Approx(3.0 * 0.05 * 0.05 / 2));
    CHECK_THROWS_AS(shifted_gaussian_energy(0.0, 1.0, 0.2), ConfigError);

    // Quadratic coefficient from the full two-component energy of the shifted spinor.
    const double g1N = 10.0;
    const double w = gaussian_variational(g1N).width;
    const auto g = make_grid(-16, 16, 512);
    ModelParams p;
    p.g1N = g1N;
    const auto energy_at = [&](double xi) {
        const auto up = gaussian_profile(*g, w, 1.0, xi);
        const auto down = gaussian_profile(*g, w, 1.0, -xi);
        SpinorField s(g, 1.0);
        for (std::size_t j = 0; j < g->size(); ++j) {
            s.up[j] = up[j] / std::sqrt(2.0);
            s.down[j] = down[j] / std::sqrt(2.0);
        }
        return spinor_energy(s, p);
    };
    const double xi = 0.02 * w;
    const double coeff = (energy_at(xi) - energy_at(0.0)) / (xi * xi);
    CHECK(coeff == Approx(shifted_gaussian_energy(g1N, w, xi) / (xi * xi)).epsilon(0.01));
}

TEST_CASE("imaginary-time oracle") {
    const auto g = make_grid(-16, 16, 512);
    const auto r0 = imaginary_time_ground_state(0.0, g);
    CHECK(r0.energy == Approx(0.5).epsilon(1e-6));
    CHECK(r0.width == Approx(1.0).epsilon(1e-5));

    const auto it = imaginary_time_ground_state(20.0, g);
    const auto h = minimize_hermite(20.0);
    CHECK(it.energy == Approx(h.result.energy).epsilon(1e-4));
    CHECK(it.width == Approx(h.result.width).epsilon(1e-4));
    const auto sampled = h.expansion.sample(*g);
    double d2 = 0;
    for (std::size_t j = 0; j < g->size(); ++j) d2 += std::pow(sampled[j] - it.psi0[j], 2) * g->dx();
    CHECK(std::sqrt(d2) < 1e-3);

    // Energy is non-increasing along the relaxation.
    for (std::size_t i = 1; i < it.energy_history.size(); ++i) {
        CHECK(it.energy_history[i] <= it.energy_history[i - 1] + 1e-12 * std::abs(it.energy_history[i - 1]));
    }

    // A random positive start relaxes to the same state.
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    ImaginaryTimeOptions opts;
    RealField guess(g->size());
    for (std::size_t j = 0; j < g->size(); ++j) guess[j] = u(rng) * std::exp(-std::pow(g->x()[j] / 4, 2));
    opts.initial_guess = guess;
    const auto rnd = imaginary_time_ground_state(20.0, g, opts);
    CHECK(rnd.energy == Approx(it.energy).epsilon(1e-8));

    ImaginaryTimeOptions capped;
    capped.max_steps = 200;
    CHECK_THROWS_AS(imaginary_time_ground_state(20.0, g, capped), ImaginaryTimeError);
    ImaginaryTimeOptions coarse;
    coarse.dtau = 2e-3;
    CHECK_THROWS_AS(imaginary_time_ground_state(20.0, g, coarse), ConfigError);
}
