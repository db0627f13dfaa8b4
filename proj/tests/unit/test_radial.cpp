#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bo2d/error.hpp"
#include "bo2d/radial_grid.hpp"
#include "bo2d/radial_operator.hpp"
#include "bo2d_cli/checks.hpp"

using namespace bo2d;

namespace {

RadialGridPtr grid(std::size_t n, double l = 1.0) { return std::make_shared<const RadialGrid>(n, l); }

// G1 of exp(-r^2) through its Hankel pair: int_0^inf k^2 (1/2) exp(-k^2/4) J0(k r) dk.
double gaussian_oracle(double r) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [r](double k) { return 0.5 * k * k * std::exp(-0.25 * k * k) * std::cyl_bessel_j(0.0, k * r); }, 0.0, 30.0, 20,
      1e-14);
}

}  // namespace

TEST(RadialGrid, WeightsAndMap) {
  auto g = grid(64, 2.0);
  double s = 0.0;
  for (double w : g->z_weights()) s += w;
  EXPECT_NEAR(s, 2.0, 1e-14);
  EXPECT_EQ(g->r()[0], 0.0);
  for (std::size_t i = 0; i < g->size(); ++i) EXPECT_NEAR(g->z_of(g->r()[i]), g->z()[i], 1e-13);
  // int_0^inf exp(-r^2) r dr = 1/2
  double m = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i) m += g->area_weights()[i] * std::exp(-g->r()[i] * g->r()[i]);
  EXPECT_NEAR(m, 0.5, 1e-12);
}

TEST(RadialGrid, WithRmax) {
  auto g = RadialGrid::with_rmax(128, 40.0);
  EXPECT_NEAR(g->r_max(), 40.0, 1e-12);
  EXPECT_THROW(RadialGrid(2, 1.0), DomainError);
}

TEST(RadialProfile, InterpolatesAndEstimatesDecay) {
  // (1 + r^2)^(-3/2) is linear in z after the sqrt(1 - z) factor, so interpolation is exact.
  auto f = [](double r) { return std::pow(1.0 + r * r, -1.5); };
  const auto p = sample(grid(128), f);
  for (double r : {0.0, 0.3, 1.7, 9.0, 1e3}) EXPECT_NEAR(p(r), f(r), 1e-13);
  EXPECT_NEAR(p.decay_exponent, 3.0, 1e-2);
  EXPECT_THROW(p(-1.0), DomainError);
}

TEST(G1Hankel, GaussianAgainstBesselQuadrature) {
  const auto p = sample(grid(256), [](double r) { return std::exp(-r * r); });
  const auto g = g1_hankel(p);
  for (std::size_t i = 0; i < p.h.size(); i += 7) {
    const double r = p.grid->r()[i];
    if (r > 8.0) break;
    EXPECT_NEAR(g.h[i], gaussian_oracle(r), 1e-8) << "r = " << r;
  }
}

TEST(G1Hankel, ZeroProfile) {
  const auto p = sample(grid(32), [](double) { return 0.0; });
  for (double v : g1_hankel(p).h) EXPECT_EQ(v, 0.0);
}

TEST(G1Hankel, RejectsSlowDecay) {
  const auto p = sample(grid(64), [](double r) { return 1.0 / (1.0 + std::sqrt(r)); });
  EXPECT_THROW(g1_hankel(p), DomainError);
}

TEST(G1Hankel, NearMonochromaticMode) {
  // Windowed J0(k0 r): G1 at the origin approaches k0 h(0) as the window widens.
  const double k0 = 2.0, w = 40.0;
  const auto p = sample(grid(1024, 10.0), [&](double r) {
    return std::cyl_bessel_j(0.0, k0 * r) * std::exp(-(r / w) * (r / w));
  });
  const auto g = g1_hankel(p);
  EXPECT_NEAR(g.h[0], k0 * p.h[0], 5e-3);
}

TEST(G1Direct, ZeroProfile) {
  EXPECT_EQ(g1_direct([](double) { return 0.0; }, 0.7).value, 0.0);
  EXPECT_EQ(g1_direct([](double) { return 0.0; }, 0.0).value, 0.0);
}

TEST(G1Direct, LorentzianOriginMatchesHankel) {
  const auto p = sample(grid(1024), [](double r) { return 4.0 / (1.0 + r * r); });
  const auto g = g1_hankel(p);
  const double d = g1_direct([](double r) { return 4.0 / (1.0 + r * r); }, 0.0).value;
  EXPECT_NEAR(d, g.h[0], 1e-6 * std::abs(g.h[0]));
}

TEST(G1Direct, LorentzianAtTwentyRadii) {
  const auto p = sample(grid(1024), [](double r) { return 4.0 / (1.0 + r * r); });
  const auto g = g1_hankel(p);
  const auto gi = sample(p.grid, [](double) { return 0.0; });
  for (int k = 1; k <= 20; ++k) {
    const double r = 0.25 * k;
    const DirectValue d = g1_direct([](double s) { return 4.0 / (1.0 + s * s); }, r);
    const double hk = p.grid->evaluate(p.grid->coefficients(g.h), r);
    EXPECT_FALSE(d.accuracy_warning);
    EXPECT_NEAR(d.value, hk, 1e-6 * std::max(1.0, std::abs(hk))) << "r = " << r;
  }
}

TEST(G1Direct, SampledProfileBeyondGrid) {
  const auto p = sample(grid(64), [](double r) { return std::exp(-r * r); });
  EXPECT_THROW(g1_direct(p, 2.0 * p.grid->r_max()), DomainError);
}

TEST(G1CrossCheck, ThreeProfiles) {
  for (int k = 0; k < 3; ++k) EXPECT_LT(cli::radial_cross_error(k), 1e-6) << "profile " << k;
}

TEST(G1CrossCheck, EmbeddedInTwoDimensions) { EXPECT_LT(cli::radial_embedding_error(), 1e-4); }
