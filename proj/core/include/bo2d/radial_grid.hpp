#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace bo2d {

/// Radial nodes on [0, inf) obtained from Gauss-Radau points z_i of [-1, 1)
/// (fixed node z = -1) through the stereographic map
///   r = L sqrt((1 + z) / (1 - z)).
/// Half of the nodes lie inside r < L, so L is the grading parameter. A
/// profile h is represented by the Legendre expansion of h / sqrt(1 - z),
/// which is smooth for profiles decaying like 1/r or faster.
class RadialGrid {
 public:
  RadialGrid(std::size_t n, double scale);

  /// Grid whose outermost node sits at r_max.
  static std::shared_ptr<const RadialGrid> with_rmax(std::size_t n, double r_max);

  std::size_t size() const noexcept { return r_.size(); }
  double scale() const noexcept { return scale_; }
  double r_max() const noexcept { return r_.back(); }

  std::span<const double> r() const noexcept { return r_; }
  std::span<const double> z() const noexcept { return z_; }
  /// Radau weights in z; exact for polynomials up to degree 2n - 2.
  std::span<const double> z_weights() const noexcept { return wz_; }
  /// Weights of the r dr measure: sum_i w_i f(r_i) ~ int_0^inf f(r) r dr.
  std::span<const double> area_weights() const noexcept { return wr_; }

  /// Legendre coefficients c_l of h / sqrt(1 - z), l = 0 .. n-1.
  std::vector<double> coefficients(std::span<const double> h) const;
  /// Evaluates the expansion at any r >= 0 (Clenshaw).
  double evaluate(std::span<const double> coeffs, double r) const;
  /// P_l(z_i) stored row-major with row index l.
  std::span<const double> legendre_table() const noexcept { return p_; }
  /// Discrete norms sum_i w_i P_l(z_i)^2.
  std::span<const double> norms() const noexcept { return gamma_; }

  /// z of radius r, exact inverse of the node map.
  double z_of(double r) const noexcept;

 private:
  double scale_;
  std::vector<double> z_, r_, wz_, wr_, p_, gamma_;
};

using RadialGridPtr = std::shared_ptr<const RadialGrid>;

/// Samples h(r_i) on a radial grid with an optional far-field exponent estimate.
struct RadialProfile {
  RadialGridPtr grid;
  std::vector<double> h;
  /// -d ln h / d ln r near the outermost nodes; NaN when undefined.
  double decay_exponent = 0.0;

  /// Spectral interpolant; throws DomainError when r < 0.
  double operator()(double r) const;
  /// Recomputes decay_exponent from the samples.
  void estimate_decay();
};

/// Samples `f` on the grid.
template <class F>
RadialProfile sample(const RadialGridPtr& grid, F&& f) {
  RadialProfile p{grid, std::vector<double>(grid->size()), 0.0};
  for (std::size_t i = 0; i < grid->size(); ++i) p.h[i] = f(grid->r()[i]);
  p.estimate_decay();
  return p;
}

}  // namespace bo2d
