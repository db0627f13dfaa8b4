#include "bo2d/radial_grid.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bo2d/error.hpp"

namespace bo2d {

namespace {

// P_{n-1}(z), P_n(z) and P_n'(z) by the three-term recurrence, in extended
// precision so nodes and weights come out correctly rounded.
struct LegendrePair {
  long double pm1, p, dp;
};

LegendrePair legendre(std::size_t n, long double z) {
  long double p0 = 1.0L, p1 = z;
  if (n == 0) return {0.0L, 1.0L, 0.0L};
  for (std::size_t l = 1; l < n; ++l) {
    const long double p2 = ((2.0L * l + 1.0L) * z * p1 - l * p0) / (l + 1.0L);
    p0 = p1;
    p1 = p2;
  }
  const long double dp = static_cast<long double>(n) * (z * p1 - p0) / (z * z - 1.0L);
  return {p0, p1, dp};
}

}  // namespace

RadialGrid::RadialGrid(std::size_t n, double scale) : scale_(scale) {
  if (n < 4) throw DomainError("RadialGrid: need at least 4 nodes");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("RadialGrid: scale must be positive");

  // Interior Radau nodes are the roots of q = P_{n-1} + P_n other than -1.
  z_.assign(n, -1.0);
  wz_.assign(n, 0.0);
  const double nn = static_cast<double>(n);
  wz_[0] = 2.0 / (nn * nn);
  std::vector<long double> zl(n, -1.0L);
  for (std::size_t j = 1; j < n; ++j) {
    long double z = -std::cos(2.0L * std::numbers::pi_v<long double> * static_cast<long double>(j) / (2.0L * nn - 1.0L));
    for (int it = 0; it < 100; ++it) {
      const auto a = legendre(n, z);
      const auto b = legendre(n - 1, z);
      const long double dz = (a.p + a.pm1) / (a.dp + b.dp);
      z -= dz;
      if (std::abs(dz) < 1e-19L) break;
    }
    zl[j] = z;
    z_[j] = static_cast<double>(z);
    const long double pm1 = legendre(n - 1, z).p;
    wz_[j] = static_cast<double>((1.0L - z) / (static_cast<long double>(nn) * nn * pm1 * pm1));
  }

  r_.resize(n);
  wr_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long double z = zl[i];
    r_[i] = i == 0 ? 0.0 : scale * static_cast<double>(std::sqrt((1.0L + z) / (1.0L - z)));
    // r dr = L^2 dz / (1 - z)^2
    wr_[i] = wz_[i] * scale * scale / static_cast<double>((1.0L - z) * (1.0L - z));
  }

  p_.assign(n * n, 0.0);
  gamma_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    long double p0 = 1.0L, p1 = zl[i];
    p_[i] = 1.0;
    if (n > 1) p_[n + i] = z_[i];
    for (std::size_t l = 1; l + 1 < n; ++l) {
      const long double p2 = ((2.0L * l + 1.0L) * zl[i] * p1 - l * p0) / (l + 1.0L);
      p0 = p1;
      p1 = p2;
      p_[(l + 1) * n + i] = static_cast<double>(p2);
    }
  }
  for (std::size_t l = 0; l < n; ++l) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += wz_[i] * p_[l * n + i] * p_[l * n + i];
    gamma_[l] = s;
  }
}

std::shared_ptr<const RadialGrid> RadialGrid::with_rmax(std::size_t n, double r_max) {
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw DomainError("RadialGrid: r_max must be positive");
  const RadialGrid unit(n, 1.0);
  return std::make_shared<const RadialGrid>(n, r_max / unit.r_max());
}

double RadialGrid::z_of(double r) const noexcept {
  const double rho2 = (r / scale_) * (r / scale_);
  return 1.0 - 2.0 / (rho2 + 1.0);
}

std::vector<double> RadialGrid::coefficients(std::span<const double> h) const {
  const std::size_t n = size();
  if (h.size() != n) throw DomainError("RadialGrid: sample count mismatch");
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = wz_[i] * h[i] / std::sqrt(1.0 - z_[i]);
  std::vector<double> c(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    const double* row = p_.data() + l * n;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += row[i] * f[i];
    c[l] = s / gamma_[l];
  }
  return c;
}

double RadialGrid::evaluate(std::span<const double> c, double r) const {
  const double z = z_of(r);
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t l = c.size(); l-- > 1;) {
    const double ld = static_cast<double>(l);
    // Clenshaw for P_{l+1} = ((2l+1) z P_l - l P_{l-1}) / (l+1).
    const double alpha = (2.0 * ld + 1.0) * z / (ld + 1.0);
    const double beta = -(ld + 1.0) / (ld + 2.0);
    const double b0 = c[l] + alpha * b1 + beta * b2;
    b2 = b1;
    b1 = b0;
  }
  const double s = c.empty() ? 0.0 : c[0] + z * b1 - 0.5 * b2;
  return s * std::sqrt(1.0 - z);
}

double RadialProfile::operator()(double r) const {
  if (!(r >= 0.0)) throw DomainError("RadialProfile: negative radius");
  const auto c = grid->coefficients(h);
  return grid->evaluate(c, r);
}

void RadialProfile::estimate_decay() {
  const std::size_t n = h.size();
  decay_exponent = std::numeric_limits<double>::quiet_NaN();
  if (n < 4) return;
  const auto r = grid->r();
  const double r1 = r[n - 4], r2 = r[n - 1];
  if (h[n - 4] > 0.0 && h[n - 1] > 0.0) decay_exponent = -std::log(h[n - 1] / h[n - 4]) / std::log(r2 / r1);
}

}  // namespace bo2d
