#pragma once

#include <functional>

#include "bo2d/radial_grid.hpp"

namespace bo2d {

/// G1 applied to an axisymmetric profile through the |k| multiplier of the
/// order-0 Hankel transform. The multiplier is diagonal in the Legendre basis
/// of the stereographic map (eigenvalue (l + 1/2) / L on the sphere), so the
/// result is exact for profiles in the span of the basis.
///
/// Throws DomainError when h does not decay at least like 1/r at the
/// outermost node (|h| rho > 1e-2 max|h| there).
RadialProfile g1_hankel(const RadialProfile& p);

struct DirectValue {
  double value = 0.0;
  /// Set when two panel resolutions of the diagonal window disagree by more
  /// than 1e-8 relative, i.e. h is not smooth enough for the subtraction.
  bool accuracy_warning = false;
};

/// Finite-part quadrature of the elliptic-kernel form,
///   G1[h](r) = -(2/pi) f.p. int_0^inf h(r') r' E(k) / ((r' - r)^2 (r + r')) dr',
/// k = 2 sqrt(r r') / (r + r'). The diagonal window [r/2, 3r/2] is folded
/// onto t = |r' - r|, which cancels the odd part of the singularity; the
/// remaining logarithmic term of E near k = 1 is integrated on geometric
/// panels. At r = 0 the regular limit int (h(0) - h(r')) / r'^2 dr' is used.
/// `scale` is the radius beyond which h is treated as tail.
DirectValue g1_direct(const std::function<double(double)>& h, double r, double scale = 1.0);

/// Same for a sampled profile, using its spectral interpolant. Throws
/// DomainError when r lies beyond the outermost node.
double g1_direct(const RadialProfile& p, double r);

}  // namespace bo2d
