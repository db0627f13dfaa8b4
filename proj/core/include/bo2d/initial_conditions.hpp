#pragma once

#include <optional>

#include "bo2d/spectral_field.hpp"

namespace bo2d {

/// Gaussian pulse  a exp(-(x - x0)^2 / (2 sigma_x^2) - (y - y0)^2 / (2 sigma_y^2)).
struct GaussianIC {
  double a = 0.0;
  double sigma_x = 1.0;
  double sigma_y = 1.0;
  /// Defaults to (-Lx/4, 0) of the grid it is realized on.
  std::optional<double> x0;
  std::optional<double> y0;

  double alpha() const noexcept { return sigma_y / sigma_x; }
};

struct RealizedIC {
  SpectralField2D field;
  /// Set when 6 sigma does not fit in the box and periodic images overlap.
  bool image_overlap_warning = false;
};

/// Samples the pulse on the grid, summing the nearest periodic images so the
/// sampled field is smooth across the box edges. Throws DomainError for a = 0,
/// non-positive widths or non-finite parameters.
RealizedIC realize(const GaussianIC& ic, const GridPtr& grid);

/// Applies the symmetry A -> c A(c x, c y), tau -> tau / c^2 to the pulse
/// parameters (centre included). Throws DomainError for c <= 0.
GaussianIC scale_by(const GaussianIC& ic, double c);

}  // namespace bo2d
