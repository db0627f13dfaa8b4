#include "bo2d/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bo2d/error.hpp"
#include "fft_plans.hpp"

namespace bo2d {
namespace detail {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

FftPlans::FftPlans(std::size_t nx, std::size_t ny) {
  const int n0 = static_cast<int>(ny);
  const int n1 = static_cast<int>(nx);
  RealBuffer r(nx * ny);
  ComplexBuffer c(ny * (nx / 2 + 1));
  auto* cp = reinterpret_cast<fftw_complex*>(c.data());
  std::lock_guard lock(planner_mutex());
  // ESTIMATE keeps the plan choice, and therefore round-off, reproducible.
  r2c_ = fftw_plan_dft_r2c_2d(n0, n1, r.data(), cp, FFTW_ESTIMATE);
  c2r_ = fftw_plan_dft_c2r_2d(n0, n1, cp, r.data(), FFTW_ESTIMATE);
  if (r2c_ == nullptr || c2r_ == nullptr) throw Error("FFTW planning failed");
}

FftPlans::~FftPlans() {
  std::lock_guard lock(planner_mutex());
  if (r2c_ != nullptr) fftw_destroy_plan(r2c_);
  if (c2r_ != nullptr) fftw_destroy_plan(c2r_);
}

void FftPlans::forward(const double* in, Complex* out) const {
  fftw_execute_dft_r2c(r2c_, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void FftPlans::inverse(Complex* in, double* out) const {
  fftw_execute_dft_c2r(c2r_, reinterpret_cast<fftw_complex*>(in), out);
}

}  // namespace detail

namespace {

std::vector<double> fft_wavenumbers(std::size_t n, double length) {
  std::vector<double> k(n);
  const double base = 2.0 * std::numbers::pi / length;
  const auto half = static_cast<long>(n / 2);
  for (std::size_t i = 0; i < n; ++i) {
    long m = static_cast<long>(i);
    if (m >= half) m -= static_cast<long>(n);
    k[i] = base * static_cast<double>(m);
  }
  return k;
}

}  // namespace

Grid2D::Grid2D(std::size_t nx, std::size_t ny, double lx, double ly)
    : nx_(nx),
      ny_(ny),
      lx_(lx),
      ly_(ly),
      kx_max_(std::numbers::pi * static_cast<double>(nx) / lx),
      ky_max_(std::numbers::pi * static_cast<double>(ny) / ly),
      kx_(fft_wavenumbers(nx, lx)),
      ky_(fft_wavenumbers(ny, ly)),
      plans_(std::make_unique<detail::FftPlans>(nx, ny)) {}

Grid2D::~Grid2D() = default;

GridPtr make_grid(std::size_t nx, std::size_t ny, double lx, double ly) {
  auto check_size = [](std::size_t n, const char* name) {
    if (n < 8 || n % 2 != 0)
      throw DomainError(std::string(name) + " must be even and at least 8, got " + std::to_string(n));
  };
  check_size(nx, "nx");
  check_size(ny, "ny");
  if (!(lx > 0.0) || !std::isfinite(lx)) throw DomainError("Lx must be positive and finite");
  if (!(ly > 0.0) || !std::isfinite(ly)) throw DomainError("Ly must be positive and finite");
  return std::make_shared<const Grid2D>(nx, ny, lx, ly);
}

}  // namespace bo2d
