#include "bo2d/spectral_ops.hpp"

#include <cmath>
#include <cstdlib>

#include "bo2d/error.hpp"
#include "fft_plans.hpp"

namespace bo2d {
namespace detail {

void forward(const Grid2D& g, std::span<const double> in, std::span<Complex> out) {
  g.plans().forward(in.data(), out.data());
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& c : out) c *= scale;
}

void inverse(const Grid2D& g, std::span<Complex> in, std::span<double> out) {
  g.plans().inverse(in.data(), out.data());
}

void multiply_abs_k(const Grid2D& g, std::span<Complex> c) {
  const auto& kx = g.kx();
  const auto& ky = g.ky();
  const std::size_t nkx = g.nkx();
  for (std::size_t j = 0; j < g.ny(); ++j) {
    const double ky2 = ky[j] * ky[j];
    Complex* row = c.data() + j * nkx;
    for (std::size_t i = 0; i < nkx; ++i) row[i] *= std::sqrt(kx[i] * kx[i] + ky2);
  }
}

void multiply_i_kx(const Grid2D& g, std::span<Complex> c) {
  const auto& kx = g.kx();
  const std::size_t nkx = g.nkx();
  const std::size_t nyq = g.nx() / 2;
  for (std::size_t j = 0; j < g.ny(); ++j) {
    Complex* row = c.data() + j * nkx;
    for (std::size_t i = 0; i < nyq; ++i) row[i] = Complex(-kx[i] * row[i].imag(), kx[i] * row[i].real());
    row[nyq] = 0.0;
  }
}

void zero_aliased(const Grid2D& g, std::span<Complex> c) {
  const std::size_t nkx = g.nkx();
  for (std::size_t j = 0; j < g.ny(); ++j) {
    Complex* row = c.data() + j * nkx;
    for (std::size_t i = 0; i < nkx; ++i)
      if (!dealias_keeps(g, i, j)) row[i] = 0.0;
  }
}

}  // namespace detail

namespace {

// Signed integer mode number of FFT index `idx` on an n-point axis.
long mode_number(std::size_t idx, std::size_t n) {
  const auto m = static_cast<long>(idx);
  return m >= static_cast<long>(n / 2) ? m - static_cast<long>(n) : m;
}

}  // namespace

bool dealias_keeps(const Grid2D& g, std::size_t i, std::size_t j) noexcept {
  // |m| <= (2/3)(n/2)  <=>  3|m| <= n, exact in integers.
  const long mx = std::labs(mode_number(i, g.nx()));
  const long my = std::labs(mode_number(j, g.ny()));
  return 3 * mx <= static_cast<long>(g.nx()) && 3 * my <= static_cast<long>(g.ny());
}

SpectralField2D apply_dispersion(const SpectralField2D& a) {
  require_finite(a, "apply_dispersion");
  SpectralField2D out = a;
  detail::multiply_abs_k(a.grid(), out.spectral_mut());
  return out;
}

SpectralField2D ddx(const SpectralField2D& a) {
  require_finite(a, "ddx");
  SpectralField2D out = a;
  detail::multiply_i_kx(a.grid(), out.spectral_mut());
  return out;
}

SpectralField2D ddy(const SpectralField2D& a) {
  require_finite(a, "ddy");
  SpectralField2D out = a;
  auto c = out.spectral_mut();
  const Grid2D& g = a.grid();
  const std::size_t nkx = g.nkx();
  const std::size_t nyq = g.ny() / 2;
  for (std::size_t j = 0; j < g.ny(); ++j) {
    const double k = j == nyq ? 0.0 : g.ky()[j];
    Complex* row = c.data() + j * nkx;
    for (std::size_t i = 0; i < nkx; ++i) row[i] = Complex(-k * row[i].imag(), k * row[i].real());
  }
  return out;
}

SpectralField2D dealias_23(const SpectralField2D& a) {
  SpectralField2D out = a;
  detail::zero_aliased(a.grid(), out.spectral_mut());
  return out;
}

double spectral_tail_fraction(const SpectralField2D& a, bool dealiased) {
  const Grid2D& g = a.grid();
  auto c = a.spectral();
  // Kept band in mode numbers, then its outer third.
  const double bx = dealiased ? static_cast<double>(g.nx()) / 3.0 : static_cast<double>(g.nx()) / 2.0;
  const double by = dealiased ? static_cast<double>(g.ny()) / 3.0 : static_cast<double>(g.ny()) / 2.0;
  const std::size_t nkx = g.nkx();
  double total = 0.0;
  double tail = 0.0;
  for (std::size_t j = 0; j < g.ny(); ++j) {
    const double my = std::abs(static_cast<double>(mode_number(j, g.ny())));
    for (std::size_t i = 0; i < nkx; ++i) {
      // Columns 1..nx/2-1 stand for a conjugate pair.
      const double w = (i == 0 || i == g.nx() / 2) ? 1.0 : 2.0;
      const double e = w * std::norm(c[j * nkx + i]);
      total += e;
      const double mx = static_cast<double>(i);
      if (mx > 2.0 * bx / 3.0 || my > 2.0 * by / 3.0) tail += e;
    }
  }
  return total > 0.0 ? tail / total : 0.0;
}

}  // namespace bo2d
