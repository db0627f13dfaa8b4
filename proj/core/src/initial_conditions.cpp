#include "bo2d/initial_conditions.hpp"

#include <cmath>
#include <vector>

#include "bo2d/error.hpp"

namespace bo2d {

namespace {

void check(const GaussianIC& ic) {
  if (!std::isfinite(ic.a) || !std::isfinite(ic.sigma_x) || !std::isfinite(ic.sigma_y))
    throw DomainError("GaussianIC: non-finite parameter");
  if (ic.a == 0.0) throw DomainError("GaussianIC: amplitude must be nonzero");
  if (!(ic.sigma_x > 0.0) || !(ic.sigma_y > 0.0)) throw DomainError("GaussianIC: widths must be positive");
  if ((ic.x0 && !std::isfinite(*ic.x0)) || (ic.y0 && !std::isfinite(*ic.y0)))
    throw DomainError("GaussianIC: non-finite centre");
}

// Profile of one axis summed over the nearest periodic images.
std::vector<double> axis_profile(std::size_t n, double l, double c, double sigma, double (*coord)(const Grid2D&, std::size_t),
                                 const Grid2D& g) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (int img = -1; img <= 1; ++img) {
      const double d = coord(g, i) - c + img * l;
      s += std::exp(-d * d / (2.0 * sigma * sigma));
    }
    out[i] = s;
  }
  return out;
}

}  // namespace

RealizedIC realize(const GaussianIC& ic, const GridPtr& grid) {
  check(ic);
  const Grid2D& g = *grid;
  const double x0 = ic.x0.value_or(-0.25 * g.lx());
  const double y0 = ic.y0.value_or(0.0);

  const auto px = axis_profile(g.nx(), g.lx(), x0, ic.sigma_x, [](const Grid2D& gg, std::size_t i) { return gg.x(i); }, g);
  const auto py = axis_profile(g.ny(), g.ly(), y0, ic.sigma_y, [](const Grid2D& gg, std::size_t j) { return gg.y(j); }, g);

  RealizedIC out{SpectralField2D(grid), false};
  auto v = out.field.real_mut();
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) v[j * g.nx() + i] = ic.a * px[i] * py[j];
  out.image_overlap_warning = 6.0 * ic.sigma_x > g.lx() || 6.0 * ic.sigma_y > g.ly();
  return out;
}

GaussianIC scale_by(const GaussianIC& ic, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("scale_by: factor must be positive");
  GaussianIC out = ic;
  out.a = ic.a * c;
  out.sigma_x = ic.sigma_x / c;
  out.sigma_y = ic.sigma_y / c;
  if (ic.x0) out.x0 = *ic.x0 / c;
  if (ic.y0) out.y0 = *ic.y0 / c;
  return out;
}

}  // namespace bo2d
