#include "socbec/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <utility>

#include "socbec/error.hpp"

namespace socbec {
namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(std::span<Complex> data) { return reinterpret_cast<fftw_complex*>(data.data()); }

} // namespace

Fft::Fft(std::size_t n) : n_(n) {
    if (n == 0) throw ConfigError("FFT length must be positive");
    std::lock_guard lock(planner_mutex());
    auto* scratch = fftw_alloc_complex(n);
    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_plan_ = fftw_plan_dft_1d(len, scratch, scratch, FFTW_FORWARD, flags);
    inverse_plan_ = fftw_plan_dft_1d(len, scratch, scratch, FFTW_BACKWARD, flags);
    fftw_free(scratch);
    if (!forward_plan_ || !inverse_plan_) {
        release();
        throw NumericalError("FFTW plan creation failed");
    }
}

Fft::~Fft() { release(); }

Fft::Fft(Fft&& other) noexcept
    : n_(std::exchange(other.n_, 0)),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      inverse_plan_(std::exchange(other.inverse_plan_, nullptr)) {}

Fft& Fft::operator=(Fft&& other) noexcept {
    if (this != &other) {
        release();
        n_ = std::exchange(other.n_, 0);
        forward_plan_ = std::exchange(other.forward_plan_, nullptr);
        inverse_plan_ = std::exchange(other.inverse_plan_, nullptr);
    }
    return *this;
}

void Fft::release() noexcept {
    if (!forward_plan_ && !inverse_plan_) return;
    std::lock_guard lock(planner_mutex());
    if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    if (inverse_plan_) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
    forward_plan_ = inverse_plan_ = nullptr;
}

void Fft::forward(std::span<Complex> data) const {
    fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(data), as_fftw(data));
}

void Fft::inverse_unscaled(std::span<Complex> data) const {
    fftw_execute_dft(static_cast<fftw_plan>(inverse_plan_), as_fftw(data), as_fftw(data));
}

void Fft::inverse(std::span<Complex> data) const {
    inverse_unscaled(data);
    const double scale = 1.0 / static_cast<double>(n_);
    for (auto& v : data) v *= scale;
}

ComplexField to_momentum(const SpatialGrid& grid, std::span<const Complex> f) {
    ComplexField out(f.begin(), f.end());
    Fft(grid.size()).forward(out);
    const double scale = grid.dx() / std::sqrt(2.0 * std::numbers::pi);
    const auto k = grid.k();
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] *= scale * std::polar(1.0, -k[j] * grid.x_min());
    }
    return out;
}

ComplexField to_position(const SpatialGrid& grid, std::span<const Complex> phi) {
    ComplexField out(phi.size());
    const double scale = std::sqrt(2.0 * std::numbers::pi) / grid.dx();
    const auto k = grid.k();
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = phi[j] * scale * std::polar(1.0, k[j] * grid.x_min());
    }
    Fft(grid.size()).inverse(out);
    return out;
}

MomentumSpinor to_momentum(const SpinorField& field) {
    return {field.grid, to_momentum(*field.grid, field.up), to_momentum(*field.grid, field.down),
            field.particle_number};
}

SpinorField to_position(const MomentumSpinor& field) {
    SpinorField out(field.grid, field.particle_number);
    out.up = to_position(*field.grid, field.up);
    out.down = to_position(*field.grid, field.down);
    return out;
}

RealField spectral_derivative(const SpatialGrid& grid, std::span<const double> f) {
    ComplexField work(f.begin(), f.end());
    const Fft fft(grid.size());
    fft.forward(work);
    const auto k = grid.k();
    for (std::size_t j = 0; j < work.size(); ++j) work[j] *= Complex(0.0, k[j]);
    // The Nyquist mode has no well-defined derivative for real data.
    work[grid.size() / 2] = 0.0;
    fft.inverse(work);
    RealField out(f.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = work[j].real();
    return out;
}

} // namespace socbec
