#include "bo2d_cli/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bo2d/diagnostics.hpp"
#include "bo2d/elliptic.hpp"
#include "bo2d/error.hpp"
#include "bo2d/ground_state.hpp"
#include "bo2d/initial_conditions.hpp"
#include "bo2d/integrator.hpp"
#include "bo2d/radial_grid.hpp"
#include "bo2d/radial_operator.hpp"
#include "bo2d/spectral_ops.hpp"

namespace bo2d::cli {

namespace {

using std::numbers::pi;

CheckResult make(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured, tol, measured <= tol, std::move(detail)};
}

double profile_value(int profile, double r) {
  switch (profile) {
    case 0: return std::exp(-r * r);
    case 1: return 1.0 / (1.0 + r * r);
    default: return r * r * std::exp(-r * r);
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"all",     "dispersion",   "elliptic",   "radial",
                                              "soliton", "conservation", "groundstate"};
  return names;
}

double dispersion_symbol_error() {
  auto g = make_grid(64, 32, 10.0, 6.0);
  double err = 0.0;
  for (auto [mx, my] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{3, -2}, std::pair{7, 5}, std::pair{-12, 9}}) {
    const double kx = 2.0 * pi * mx / g->lx();
    const double ky = 2.0 * pi * my / g->ly();
    SpectralField2D f(g);
    auto v = f.real_mut();
    for (std::size_t j = 0; j < g->ny(); ++j)
      for (std::size_t i = 0; i < g->nx(); ++i) v[j * g->nx() + i] = std::cos(kx * g->x(i) + ky * g->y(j) + 0.3);
    const SpectralField2D d = apply_dispersion(f);
    const double k = std::hypot(kx, ky);
    auto dv = d.real();
    auto fv = f.real();
    for (std::size_t n = 0; n < dv.size(); ++n) err = std::max(err, std::abs(dv[n] - k * fv[n]) / k);
  }
  return err;
}

double elliptic_endpoint_error() {
  return std::max(std::abs(ellip_e(0.0) - pi / 2), std::abs(ellip_e(1.0) - 1.0));
}

double elliptic_quadrature_error(std::size_t samples) {
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double err = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    // Half the samples crowd the logarithmic end k -> 1.
    const double k = s % 2 ? u(rng) : 1.0 - std::pow(10.0, -12.0 * u(rng));
    // With t = pi/2 - s the integrand is sqrt(kc^2 + k^2 sin^2 s), whose scale
    // near s = 0 is kc; panels grow geometrically from there.
    const double kc2 = (1.0 - k) * (1.0 + k);
    const double kc = std::sqrt(kc2);
    auto f = [k, kc2](double s) { return std::sqrt(kc2 + k * k * std::sin(s) * std::sin(s)); };
    double q = 0.0;
    for (double lo = 0.0, hi = std::min(kc, pi / 2); lo < pi / 2; lo = hi, hi = std::min(4.0 * hi, pi / 2))
      q += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 5, 1e-15);
    err = std::max(err, std::abs(ellip_e(k) - q));
  }
  return err;
}

double radial_cross_error(int profile) {
  const RadialGridPtr grid = std::make_shared<const RadialGrid>(profile == 1 ? 1024 : 256, 1.0);
  const RadialProfile p = sample(grid, [profile](double r) { return profile_value(profile, r); });
  const RadialProfile gh = g1_hankel(p);
  double err = 0.0;
  double ref = 0.0;
  const auto f = [profile](double r) { return profile_value(profile, r); };
  for (std::size_t i = 0; i < grid->size() && grid->r()[i] <= 4.0; i += 3) {
    const double d = g1_direct(f, grid->r()[i], 1.0).value;
    err = std::max(err, std::abs(d - gh.h[i]));
    ref = std::max(ref, std::abs(d));
  }
  return err / ref;
}

double radial_embedding_error() {
  const double l = 40.0;
  auto g = make_grid(256, 256, l, l);
  SpectralField2D f(g);
  auto v = f.real_mut();
  for (std::size_t j = 0; j < g->ny(); ++j)
    for (std::size_t i = 0; i < g->nx(); ++i) {
      const double x = g->x(i), y = g->y(j);
      v[j * g->nx() + i] = std::exp(-(x * x + y * y));
    }
  const SpectralField2D d = apply_dispersion(f);
  const RadialProfile p = sample(std::make_shared<const RadialGrid>(256, 1.0), [](double r) { return std::exp(-r * r); });
  const RadialProfile gh = g1_hankel(p);
  const std::size_t j0 = g->ny() / 2;  // y = 0
  double err = 0.0;
  double ref = 0.0;
  for (std::size_t i = g->nx() / 2; i < g->nx(); ++i) {
    const double x = g->x(i);
    if (x > 6.0) break;
    const double a = d.at(i, j0);
    const double b = gh(x);
    err = std::max(err, std::abs(a - b));
    ref = std::max(ref, std::abs(b));
  }
  return err / ref;
}

double soliton_transit_error(std::size_t nx) {
  // Periodic travelling wave 2 kappa (1 - q^2) / (1 + q^2 - 2 q cos(kappa x))
  // with speed kappa (1 + q^2) / (1 - q^2); q = exp(-kappa / v) tends to the
  // Lorentzian 4 v / (1 + v^2 x^2) as the box grows.
  const double lx = 32.0 * pi;
  const double v = 1.0;
  const double kappa = 2.0 * pi / lx;
  const double q = std::exp(-kappa / v);
  const double speed = kappa * (1.0 + q * q) / (1.0 - q * q);
  const double x0 = -lx / 4.0;
  auto wave = [&](double x) { return 2.0 * kappa * (1.0 - q * q) / (1.0 + q * q - 2.0 * q * std::cos(kappa * x)); };

  auto g = make_grid(nx, 8, lx, 1.0);
  SpectralField2D a(g);
  auto av = a.real_mut();
  for (std::size_t j = 0; j < g->ny(); ++j)
    for (std::size_t i = 0; i < g->nx(); ++i) av[j * nx + i] = wave(g->x(i) - x0);

  const double t_end = (lx / 4.0) / speed;
  SimConfig cfg = default_sim_config(a, t_end);
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / cfg.dt));
  const double dt = t_end / static_cast<double>(steps);
  Rk4Stepper stepper(g, RhsOptions{});
  SpectralField2D s = a;
  auto c = s.spectral_mut();
  for (std::size_t n = 0; n < steps; ++n) stepper.step(c, dt);
  auto sv = s.real();
  double err = 0.0;
  for (std::size_t j = 0; j < g->ny(); ++j)
    for (std::size_t i = 0; i < g->nx(); ++i)
      err = std::max(err, std::abs(sv[j * nx + i] - wave(g->x(i) - x0 - speed * t_end)));
  return err;
}

double short_run_drift() {
  auto g = make_grid(128, 64, 32.0 * pi, 16.0 * pi);
  GaussianIC ic{1.2, 3.0, 6.0, std::nullopt, std::nullopt};
  const SpectralField2D a = realize(ic, g).field;
  SimConfig cfg = default_sim_config(a, 5.0);
  auto [trace, result] = run(a, cfg);
  const ConservationDrift d = conservation_drift(trace);
  return std::max({d.mass, d.px, d.hamiltonian});
}

std::vector<CheckResult> run_checks(const std::string& suite) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw DomainError("unknown check suite '" + suite + "'");
  const auto want = [&](const char* s) { return suite == "all" || suite == s; };
  std::vector<CheckResult> out;
  if (want("dispersion")) out.push_back(make("dispersion_symbol", dispersion_symbol_error(), 1e-12));
  if (want("elliptic")) {
    out.push_back(make("elliptic_endpoints", elliptic_endpoint_error(), 0.0, "E(0) = pi/2, E(1) = 1"));
    out.push_back(make("elliptic_vs_quadrature", elliptic_quadrature_error(), 1e-12, "1000 moduli"));
  }
  if (want("radial")) {
    const char* names3[] = {"hankel_vs_direct_gaussian", "hankel_vs_direct_lorentzian", "hankel_vs_direct_r2gaussian"};
    for (int p = 0; p < 3; ++p) out.push_back(make(names3[p], radial_cross_error(p), 1e-6));
    out.push_back(make("embedding_2d_vs_radial", radial_embedding_error(), 1e-4));
  }
  if (want("soliton")) out.push_back(make("soliton_transit", soliton_transit_error(1024), 1e-3, "nx = 1024"));
  if (want("conservation")) out.push_back(make("conservation_drift", short_run_drift(), 1e-7, "128x64, tau 5"));
  if (want("groundstate")) {
    const GroundState gs = solve_ground_state(1.0, default_ground_state_grid(1.0));
    out.push_back(make("groundstate_residual", gs.residual, 1e-10, "V* = 1"));
    const RadialProfile& h = gs.profile;
    double res = 0.0;
    for (std::size_t i = 0; i < h.h.size() && h.grid->r()[i] <= 3.0; i += 4)
      res = std::max(res, std::abs(h.h[i] + g1_direct(h, h.grid->r()[i]) - 0.5 * h.h[i] * h.h[i]));
    out.push_back(make("groundstate_direct_residual", res / h.h[0], 1e-6, "V* = 1, finite-part quadrature"));
  }
  return out;
}

}  // namespace bo2d::cli
