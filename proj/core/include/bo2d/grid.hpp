#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace bo2d {

namespace detail {
class FftPlans;
}

/// Periodic rectangle [-Lx/2, Lx/2) x [-Ly/2, Ly/2) sampled on nx x ny points.
///
/// Real samples are stored y-major: value (i, j) at x_i, y_j lives at
/// index j * nx + i. Spectral coefficients use the half-complex layout of a
/// real-to-complex transform along x: (ky index j, kx index i) at
/// j * (nx/2 + 1) + i with 0 <= i <= nx/2.
class Grid2D {
 public:
  Grid2D(std::size_t nx, std::size_t ny, double lx, double ly);
  ~Grid2D();
  Grid2D(const Grid2D&) = delete;
  Grid2D& operator=(const Grid2D&) = delete;

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  double lx() const noexcept { return lx_; }
  double ly() const noexcept { return ly_; }
  double dx() const noexcept { return lx_ / static_cast<double>(nx_); }
  double dy() const noexcept { return ly_ / static_cast<double>(ny_); }
  double cell_area() const noexcept { return dx() * dy(); }

  std::size_t size() const noexcept { return nx_ * ny_; }
  /// Number of stored kx columns in the half-complex layout.
  std::size_t nkx() const noexcept { return nx_ / 2 + 1; }
  std::size_t spectral_size() const noexcept { return nkx() * ny_; }

  double x(std::size_t i) const noexcept { return -0.5 * lx_ + dx() * static_cast<double>(i); }
  double y(std::size_t j) const noexcept { return -0.5 * ly_ + dy() * static_cast<double>(j); }

  /// Signed wavenumbers in FFT ordering, full length nx and ny.
  const std::vector<double>& kx() const noexcept { return kx_; }
  const std::vector<double>& ky() const noexcept { return ky_; }

  /// Largest |kx| and |ky| represented (the Nyquist wavenumbers).
  double kx_max() const noexcept { return kx_max_; }
  double ky_max() const noexcept { return ky_max_; }

  const detail::FftPlans& plans() const noexcept { return *plans_; }

 private:
  std::size_t nx_;
  std::size_t ny_;
  double lx_;
  double ly_;
  double kx_max_;
  double ky_max_;
  std::vector<double> kx_;
  std::vector<double> ky_;
  std::unique_ptr<detail::FftPlans> plans_;
};

using GridPtr = std::shared_ptr<const Grid2D>;

/// Validates the arguments and builds a shared grid.
///
/// Throws DomainError for odd sizes, sizes below 8 or non-positive lengths.
GridPtr make_grid(std::size_t nx, std::size_t ny, double lx, double ly);

}  // namespace bo2d
