#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <new>
#include <span>
#include <vector>

#include "bo2d/grid.hpp"

namespace bo2d {

/// Allocator returning SIMD-aligned storage suitable for FFTW new-array execution.
template <class T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() noexcept = default;
  template <class U>
  FftwAllocator(const FftwAllocator<U>&) noexcept {}
  T* allocate(std::size_t n);
  void deallocate(T* p, std::size_t) noexcept;
  template <class U>
  bool operator==(const FftwAllocator<U>&) const noexcept { return true; }
};

namespace detail {
void* fftw_aligned_alloc(std::size_t bytes);
void fftw_aligned_free(void* p) noexcept;
}  // namespace detail

template <class T>
T* FftwAllocator<T>::allocate(std::size_t n) {
  if (n > std::numeric_limits<std::size_t>::max() / sizeof(T)) throw std::bad_array_new_length();
  return static_cast<T*>(detail::fftw_aligned_alloc(n * sizeof(T)));
}

template <class T>
void FftwAllocator<T>::deallocate(T* p, std::size_t) noexcept {
  detail::fftw_aligned_free(p);
}

using Complex = std::complex<double>;
using RealBuffer = std::vector<double, FftwAllocator<double>>;
using ComplexBuffer = std::vector<Complex, FftwAllocator<Complex>>;

/// Real field on a periodic grid with a lazily synchronized Fourier twin.
///
/// Spectral coefficients are normalized so that a unit-amplitude cos(kx x)
/// contributes 1/2 at (kx, 0). Reading one representation brings it up to
/// date from the other if needed; taking a mutable view invalidates the other
/// one. Const reads may therefore transform internally, so one field must not
/// be read from two threads while it is out of sync.
class SpectralField2D {
 public:
  explicit SpectralField2D(GridPtr grid);

  /// Copies real samples (y-major, size nx*ny).
  static SpectralField2D from_real(GridPtr grid, std::span<const double> values);
  /// Copies half-complex coefficients (size ny*(nx/2+1)).
  static SpectralField2D from_spectral(GridPtr grid, std::span<const Complex> coeffs);

  const Grid2D& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }

  std::span<const double> real() const;
  std::span<const Complex> spectral() const;
  std::span<double> real_mut();
  std::span<Complex> spectral_mut();

  bool real_clean() const noexcept { return real_ok_; }
  bool spectral_clean() const noexcept { return spec_ok_; }

  double at(std::size_t i, std::size_t j) const { return real()[j * grid_->nx() + i]; }
  double max_value() const;
  double max_abs() const;
  bool all_finite() const;

 private:
  void sync_real() const;
  void sync_spectral() const;

  GridPtr grid_;
  mutable RealBuffer real_;
  mutable ComplexBuffer spec_;
  mutable bool real_ok_ = true;
  mutable bool spec_ok_ = true;
};

/// Throws NonFiniteError naming `what` when the field holds NaN or Inf.
void require_finite(const SpectralField2D& f, const char* what);

/// Grid inner product  sum f g dx dy  (exact quadrature for band-limited data).
double inner_product(const SpectralField2D& f, const SpectralField2D& g);

}  // namespace bo2d
