#pragma once

#include <cstddef>
#include <span>

#include "socbec/spinor.hpp"

namespace socbec {

/// In-place complex DFT of a fixed length, backed by FFTW.
///
/// `forward` is unnormalized; `inverse` divides by n so that
/// inverse(forward(f)) == f. Plans use FFTW_ESTIMATE so results are
/// reproducible run to run. Plan creation is serialized internally; a single
/// instance must not be used from two threads at once.
class Fft {
public:
    explicit Fft(std::size_t n);
    ~Fft();
    Fft(Fft&& other) noexcept;
    Fft& operator=(Fft&& other) noexcept;
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    std::size_t size() const noexcept { return n_; }
    void forward(std::span<Complex> data) const;
    void inverse(std::span<Complex> data) const;
    /// Inverse transform without the 1/n factor.
    void inverse_unscaled(std::span<Complex> data) const;

private:
    void release() noexcept;

    std::size_t n_ = 0;
    void* forward_plan_ = nullptr;
    void* inverse_plan_ = nullptr;
};

/// Spinor in the momentum representation.
///
/// Amplitudes approximate the continuous transform
/// phi(k) = (2 pi)^{-1/2} * integral psi(x) exp(-i k x) dx at the grid's
/// wavenumbers (DFT ordering), so sum |phi|^2 dk equals the position-space norm.
struct MomentumSpinor {
    GridPtr grid;
    ComplexField up;
    ComplexField down;
    double particle_number = 1.0;
};

MomentumSpinor to_momentum(const SpinorField& field);
SpinorField to_position(const MomentumSpinor& field);

/// Single-component versions of the same transform pair.
ComplexField to_momentum(const SpatialGrid& grid, std::span<const Complex> f);
ComplexField to_position(const SpatialGrid& grid, std::span<const Complex> phi);

/// Spectral first derivative of a real periodic sample.
RealField spectral_derivative(const SpatialGrid& grid, std::span<const double> f);

} // namespace socbec
