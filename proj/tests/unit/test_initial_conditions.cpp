#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bo2d/diagnostics.hpp"
#include "bo2d/error.hpp"
#include "bo2d/initial_conditions.hpp"

using namespace bo2d;
using std::numbers::pi;

TEST(GaussianIC, DefaultCentreAndAlpha) {
  auto g = make_grid(128, 64, 64, 32);
  const GaussianIC ic{0.5, 2.0, 4.0, std::nullopt, std::nullopt};
  EXPECT_EQ(ic.alpha(), 2.0);
  const auto r = realize(ic, g);
  EXPECT_FALSE(r.image_overlap_warning);
  // x = -Lx/4 = -16 is node 32, y = 0 is node 32; the nearest y images add 2 exp(-32).
  EXPECT_NEAR(r.field.at(32, 32), 0.5 * (1 + 2 * std::exp(-32.0)), 1e-15);
  const auto p = locate_peak(r.field);
  EXPECT_NEAR(p.xm, -16.0, 1e-10);
}

TEST(GaussianIC, ImageOverlapWarning) {
  auto g = make_grid(32, 32, 10, 10);
  EXPECT_TRUE(realize(GaussianIC{1.0, 2.0, 1.0, 0.0, 0.0}, g).image_overlap_warning);
}

TEST(GaussianIC, Rejections) {
  auto g = make_grid(16, 16, 10, 10);
  EXPECT_THROW(realize(GaussianIC{0.0, 1.0, 1.0, 0.0, 0.0}, g), DomainError);
  EXPECT_THROW(realize(GaussianIC{1.0, -1.0, 1.0, 0.0, 0.0}, g), DomainError);
  EXPECT_THROW(realize(GaussianIC{std::nan(""), 1.0, 1.0, 0.0, 0.0}, g), DomainError);
  EXPECT_THROW(scale_by(GaussianIC{1.0, 1.0, 1.0, 0.0, 0.0}, 0.0), DomainError);
}

TEST(ScaleBy, FactorFourPulse) {
  const GaussianIC s = scale_by(GaussianIC{0.1353, 25, 50, std::nullopt, std::nullopt}, 4.0);
  EXPECT_NEAR(s.a, 0.5412, 1e-15);
  EXPECT_NEAR(s.sigma_x, 6.25, 1e-15);
  EXPECT_NEAR(s.sigma_y, 12.5, 1e-15);
}

TEST(ScaleBy, IdentityAndGroup) {
  const GaussianIC ic{0.3, 5, 7, 1.0, -2.0};
  const GaussianIC one = scale_by(ic, 1.0);
  EXPECT_EQ(one.a, ic.a);
  EXPECT_EQ(*one.x0, *ic.x0);
  const GaussianIC twice = scale_by(scale_by(ic, 2.0), 2.0);
  const GaussianIC four = scale_by(ic, 4.0);
  EXPECT_DOUBLE_EQ(twice.a, four.a);
  EXPECT_DOUBLE_EQ(twice.sigma_x, four.sigma_x);
  EXPECT_DOUBLE_EQ(*twice.y0, *four.y0);
}

TEST(ScaleBy, InvariantsTransformWithTheirPowers) {
  // A -> c A(c x): M -> M / c, Px -> Px, I1 -> c I1, I2 -> c I2.
  const double c = 2.0;
  const GaussianIC ic{0.4, 6.0, 12.0, 0.0, 0.0};
  auto g = make_grid(256, 128, 128 * pi, 64 * pi);
  auto gs = make_grid(256, 128, 64 * pi, 32 * pi);
  const auto a = conserved(realize(ic, g).field);
  const auto b = conserved(realize(scale_by(ic, c), gs).field);
  EXPECT_NEAR(b.mass, a.mass / c, 1e-6 * std::abs(a.mass));
  EXPECT_NEAR(b.px, a.px, 1e-6 * a.px);
  EXPECT_NEAR(b.i1, c * a.i1, 1e-6 * c * a.i1);
  EXPECT_NEAR(b.i2, c * a.i2, 1e-6 * c * a.i2);
  EXPECT_NEAR(b.hamiltonian, c * a.hamiltonian, 1e-6 * std::abs(c * a.hamiltonian));
}
