#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bo2d/error.hpp"
#include "bo2d/grid.hpp"
#include "bo2d/spectral_field.hpp"
#include "bo2d/spectral_ops.hpp"

using namespace bo2d;
using std::numbers::pi;

namespace {

template <class F>
SpectralField2D fill(const GridPtr& g, F&& f) {
  SpectralField2D a(g);
  auto v = a.real_mut();
  for (std::size_t j = 0; j < g->ny(); ++j)
    for (std::size_t i = 0; i < g->nx(); ++i) v[j * g->nx() + i] = f(g->x(i), g->y(j));
  return a;
}

double max_diff(const SpectralField2D& a, const SpectralField2D& b) {
  double m = 0.0;
  auto x = a.real();
  auto y = b.real();
  for (std::size_t n = 0; n < x.size(); ++n) m = std::max(m, std::abs(x[n] - y[n]));
  return m;
}

}  // namespace

TEST(Grid, WavenumberOrdering) {
  auto g = make_grid(8, 8, 2 * pi, 2 * pi);
  const std::vector<double> want{0, 1, 2, 3, -4, -3, -2, -1};
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_NEAR(g->kx()[i], want[i], 1e-14);
    EXPECT_NEAR(g->ky()[i], want[i], 1e-14);
  }
}

TEST(Grid, ProductionShapes) {
  auto g = make_grid(1024, 256, 512 * pi, 128 * pi);
  EXPECT_NEAR(g->dx(), pi / 2, 1e-14);
  EXPECT_NEAR(g->dy(), pi / 2, 1e-14);
  auto d = make_grid(256, 64, 128 * pi, 32 * pi);
  EXPECT_NEAR(d->dx(), pi / 2, 1e-14);
}

TEST(Grid, RejectsBadShapes) {
  EXPECT_THROW(make_grid(7, 8, 1, 1), DomainError);
  EXPECT_THROW(make_grid(6, 8, 1, 1), DomainError);
  EXPECT_THROW(make_grid(8, 8, 0, 1), DomainError);
  EXPECT_THROW(make_grid(8, 8, 1, -1), DomainError);
}

TEST(SpectralField, RoundTripAndHermitian) {
  auto g = make_grid(64, 32, 10, 7);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  SpectralField2D a(g);
  for (auto& v : a.real_mut()) v = n(rng);
  std::vector<double> orig(a.real().begin(), a.real().end());
  auto c = a.spectral();
  // ky -> -ky in the kx = 0 column must be the conjugate.
  const std::size_t nkx = g->nkx();
  for (std::size_t j = 1; j < g->ny(); ++j)
    EXPECT_NEAR(std::abs(c[j * nkx] - std::conj(c[(g->ny() - j) * nkx])), 0.0, 1e-12);
  SpectralField2D b = SpectralField2D::from_spectral(g, c);
  double err = 0.0;
  for (std::size_t k = 0; k < orig.size(); ++k) err = std::max(err, std::abs(b.real()[k] - orig[k]));
  EXPECT_LT(err, 1e-12);
}

TEST(Dispersion, ConstantGivesZero) {
  auto g = make_grid(32, 16, 5, 3);
  const auto d = apply_dispersion(fill(g, [](double, double) { return 2.5; }));
  EXPECT_LT(d.max_abs(), 1e-14);
}

TEST(Dispersion, SingleMode) {
  auto g = make_grid(32, 16, 2 * pi, 2 * pi);
  const auto a = fill(g, [](double x, double) { return std::cos(3 * x); });
  const auto want = fill(g, [](double x, double) { return 3 * std::cos(3 * x); });
  EXPECT_LT(max_diff(apply_dispersion(a), want), 1e-13);
}

TEST(Dispersion, GaussianOriginMatchesHankelQuadrature) {
  // |k| acting on exp(-r^2) at r = 0 is int_0^inf k^2 (1/2) exp(-k^2/4) dk.
  const double oracle = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [](double k) { return 0.5 * k * k * std::exp(-0.25 * k * k); }, 0.0, 40.0, 15, 1e-15);
  const double l = 256.0;
  auto g = make_grid(1024, 1024, l, l);
  const auto a = fill(g, [](double x, double y) { return std::exp(-(x * x + y * y)); });
  const auto d = apply_dispersion(a);
  // Periodic images of the far field -M / (2 pi r^3), M = pi.
  double lattice = 0.0;
  const int m = 400;
  for (int p = -m; p <= m; ++p)
    for (int q = -m; q <= m; ++q)
      if (p || q) lattice += std::pow(l * std::hypot(p, q), -3.0);
  lattice += 2 * pi / (l * l * l * (m + 0.5));
  const double periodic = d.at(512, 512);
  EXPECT_NEAR(periodic + 0.5 * lattice, oracle, 1e-8);
}

TEST(Derivative, SineAndConstant) {
  auto g = make_grid(64, 8, 2 * pi, 1);
  const auto d = ddx(fill(g, [](double x, double) { return std::sin(2 * x); }));
  EXPECT_LT(max_diff(d, fill(g, [](double x, double) { return 2 * std::cos(2 * x); })), 1e-13);
  EXPECT_LT(ddx(fill(g, [](double, double) { return 1.0; })).max_abs(), 1e-14);
}

TEST(Derivative, GaussianAgainstFiniteDifferences) {
  const double sx = 25, sy = 50;
  auto g = make_grid(1024, 256, 512 * pi, 128 * pi);
  auto f = [&](double x, double y) { return 0.3 * std::exp(-x * x / (2 * sx * sx) - y * y / (2 * sy * sy)); };
  const auto d = ddx(fill(g, f));
  // The oracle is the analytic function differenced at a finer step than the grid.
  const double h = g->dx() / 8;
  double err = 0.0, ref = 0.0;
  for (std::size_t j = 0; j < g->ny(); ++j)
    for (std::size_t i = 0; i < g->nx(); ++i) {
      const double x = g->x(i), y = g->y(j);
      const double fd = (f(x + h, y) - f(x - h, y)) / (2 * h);
      err = std::max(err, std::abs(d.at(i, j) - fd));
      ref = std::max(ref, std::abs(fd));
    }
  EXPECT_LT(err / ref, 1e-4);
}

TEST(Dealias, ExtremeAndLowModes) {
  auto g = make_grid(16, 16, 2 * pi, 2 * pi);
  const auto nyq = fill(g, [](double x, double) { return std::cos(8 * x); });
  EXPECT_LT(dealias_23(nyq).max_abs(), 1e-14);
  const auto low = fill(g, [](double x, double) { return std::cos(x); });
  EXPECT_LT(max_diff(dealias_23(low), low), 1e-14);
}

TEST(Dealias, KeptModeCountMatchesIndexEnumeration) {
  auto g = make_grid(48, 24, 3, 2);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  SpectralField2D a(g);
  for (auto& v : a.real_mut()) v = n(rng);
  const auto d = dealias_23(a);
  auto c = d.spectral();
  std::size_t kept = 0, expected = 0;
  for (std::size_t j = 0; j < g->ny(); ++j)
    for (std::size_t i = 0; i < g->nkx(); ++i) {
      if (std::abs(c[j * g->nkx() + i]) > 0.0) ++kept;
      const long mx = static_cast<long>(i);
      const long my = std::lround(std::abs(g->ky()[j]) * g->ly() / (2 * pi));
      if (3 * mx <= 48 && 3 * my <= 24) ++expected;
    }
  EXPECT_EQ(kept, expected);
}

TEST(Dispersion, RejectsNonFinite) {
  auto g = make_grid(8, 8, 1, 1);
  SpectralField2D a(g);
  a.real_mut()[3] = std::nan("");
  EXPECT_THROW(apply_dispersion(a), NonFiniteError);
}
