#include "bo2d/spectral_field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "bo2d/error.hpp"
#include "bo2d/spectral_ops.hpp"

namespace bo2d {
namespace detail {

void* fftw_aligned_alloc(std::size_t bytes) {
  void* p = fftw_malloc(bytes == 0 ? 1 : bytes);
  if (p == nullptr) throw std::bad_alloc();
  return p;
}

void fftw_aligned_free(void* p) noexcept { fftw_free(p); }

}  // namespace detail

SpectralField2D::SpectralField2D(GridPtr grid)
    : grid_(std::move(grid)), real_(grid_->size(), 0.0), spec_(grid_->spectral_size(), Complex{}) {}

SpectralField2D SpectralField2D::from_real(GridPtr grid, std::span<const double> values) {
  SpectralField2D f(std::move(grid));
  if (values.size() != f.grid_->size())
    throw DomainError("real samples: expected " + std::to_string(f.grid_->size()) + " values, got " +
                      std::to_string(values.size()));
  std::copy(values.begin(), values.end(), f.real_.begin());
  f.spec_ok_ = false;
  return f;
}

SpectralField2D SpectralField2D::from_spectral(GridPtr grid, std::span<const Complex> coeffs) {
  SpectralField2D f(std::move(grid));
  if (coeffs.size() != f.grid_->spectral_size())
    throw DomainError("spectral coefficients: expected " + std::to_string(f.grid_->spectral_size()) +
                      " values, got " + std::to_string(coeffs.size()));
  std::copy(coeffs.begin(), coeffs.end(), f.spec_.begin());
  f.real_ok_ = false;
  return f;
}

void SpectralField2D::sync_real() const {
  if (real_ok_) return;
  ComplexBuffer scratch(spec_.begin(), spec_.end());
  detail::inverse(*grid_, scratch, real_);
  real_ok_ = true;
}

void SpectralField2D::sync_spectral() const {
  if (spec_ok_) return;
  detail::forward(*grid_, real_, spec_);
  spec_ok_ = true;
}

std::span<const double> SpectralField2D::real() const {
  sync_real();
  return real_;
}

std::span<const Complex> SpectralField2D::spectral() const {
  sync_spectral();
  return spec_;
}

std::span<double> SpectralField2D::real_mut() {
  sync_real();
  spec_ok_ = false;
  return real_;
}

std::span<Complex> SpectralField2D::spectral_mut() {
  sync_spectral();
  real_ok_ = false;
  return spec_;
}

double SpectralField2D::max_value() const {
  auto r = real();
  return *std::max_element(r.begin(), r.end());
}

double SpectralField2D::max_abs() const {
  double m = 0.0;
  for (double v : real()) m = std::max(m, std::abs(v));
  return m;
}

bool SpectralField2D::all_finite() const {
  if (real_ok_)
    return std::all_of(real_.begin(), real_.end(), [](double v) { return std::isfinite(v); });
  return std::all_of(spec_.begin(), spec_.end(),
                     [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

void require_finite(const SpectralField2D& f, const char* what) {
  if (!f.all_finite()) throw NonFiniteError(std::string(what) + ": field contains NaN or Inf");
}

double inner_product(const SpectralField2D& f, const SpectralField2D& g) {
  if (f.grid_ptr() != g.grid_ptr() &&
      (f.grid().nx() != g.grid().nx() || f.grid().ny() != g.grid().ny()))
    throw DomainError("inner_product: fields live on different grids");
  auto a = f.real();
  auto b = g.real();
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s * f.grid().cell_area();
}

}  // namespace bo2d
