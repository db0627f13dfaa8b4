#pragma once

#include <span>

#include "bo2d/spectral_field.hpp"

namespace bo2d {

/// Nonlocal dispersion: multiplies every Fourier mode by |k| = sqrt(kx^2 + ky^2).
/// Consumes the spectral representation. Rejects non-finite input.
SpectralField2D apply_dispersion(const SpectralField2D& a);

/// Spectral x-derivative (multiplier i kx). The x-Nyquist column is zeroed,
/// as for any odd derivative of a real field.
SpectralField2D ddx(const SpectralField2D& a);

/// Spectral y-derivative, same conventions as ddx.
SpectralField2D ddy(const SpectralField2D& a);

/// Two-thirds rule: zeroes every mode with |kx| > 2/3 kx_max or |ky| > 2/3 ky_max.
SpectralField2D dealias_23(const SpectralField2D& a);

/// True when mode (kx index i of the half-complex layout, ky index j) survives dealias_23.
bool dealias_keeps(const Grid2D& g, std::size_t i, std::size_t j) noexcept;

/// Fraction of spectral energy sum |a_k|^2 held by the outer third of the
/// resolved band: modes beyond 2/3 of the kept |kx| or |ky| range. When
/// `dealiased` is true the resolved band is the 2/3-rule band, otherwise the
/// full grid.
double spectral_tail_fraction(const SpectralField2D& a, bool dealiased);

namespace detail {
// In-place kernels on half-complex buffers, shared with the time stepper.
void multiply_abs_k(const Grid2D& g, std::span<Complex> c);
void multiply_i_kx(const Grid2D& g, std::span<Complex> c);
void zero_aliased(const Grid2D& g, std::span<Complex> c);
void forward(const Grid2D& g, std::span<const double> in, std::span<Complex> out);
// Destroys `in`.
void inverse(const Grid2D& g, std::span<Complex> in, std::span<double> out);
}  // namespace detail

}  // namespace bo2d
