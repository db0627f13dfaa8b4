#include "bo2d/radial_operator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bo2d/elliptic.hpp"
#include "bo2d/error.hpp"

namespace bo2d {

RadialProfile g1_hankel(const RadialProfile& p) {
  const RadialGrid& g = *p.grid;
  const std::size_t n = g.size();
  const auto z = g.z();

  double hmax = 0.0;
  for (double v : p.h) {
    if (!std::isfinite(v)) throw NonFiniteError("g1_hankel: non-finite profile");
    hmax = std::max(hmax, std::abs(v));
  }
  RadialProfile out{p.grid, std::vector<double>(n, 0.0), std::numeric_limits<double>::quiet_NaN()};
  if (hmax == 0.0) return out;
  const double rho_last = g.r_max() / g.scale();
  if (std::abs(p.h.back()) * rho_last > 1e-2 * hmax)
    throw DomainError("g1_hankel: profile does not decay at the outer radius; enlarge the grid");

  auto c = g.coefficients(p.h);
  for (std::size_t l = 0; l < n; ++l) c[l] *= static_cast<double>(l) + 0.5;
  const auto tab = g.legendre_table();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t l = 0; l < n; ++l) s += c[l] * tab[l * n + i];
    const double omz = 1.0 - z[i];
    out.h[i] = s * omz * std::sqrt(omz) / g.scale();
  }
  out.estimate_decay();
  return out;
}

namespace {

using boost::math::quadrature::exp_sinh;
using boost::math::quadrature::gauss;
using boost::math::quadrature::gauss_kronrod;

constexpr double kTol = 1e-12;

// Folded diagonal window: int_0^delta (f(r+t) + f(r-t) - 2 f(r)) / t^2 dt.
template <int Order, class F>
double fold_window(F&& f, double r, double delta, double h_r) {
  const double fr = f(r);
  auto g = [&](double t) { return (f(r + t) + f(r - t) - 2.0 * fr) / (t * t); };
  // g ~ alpha ln t + beta near t = 0; alpha follows from E(k) ~ 1 + (k'^2/2) ln(4/k').
  const double alpha = -h_r / (8.0 * r * r);
  const double t_min = 1e-3 * delta;
  const double beta = g(t_min) - alpha * std::log(t_min);
  double sum = alpha * (t_min * std::log(t_min) - t_min) + beta * t_min;
  double a = t_min;
  while (a < delta) {
    const double b = std::min(2.0 * a, delta);
    sum += gauss<double, Order>::integrate(g, a, b);
    a = b;
  }
  return sum;
}

}  // namespace

DirectValue g1_direct(const std::function<double(double)>& h, double r, double scale) {
  if (!(scale > 0.0)) throw DomainError("g1_direct: scale must be positive");
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("g1_direct: radius must be finite and non-negative");
  DirectValue out;
  const double inv_pi2 = 2.0 / std::numbers::pi;

  if (r == 0.0) {
    // Integrand tends to -h''(0)/2; fixed geometric panels avoid chasing
    // the rounding noise of h(0) - h(r') near the origin.
    const double h0 = h(0.0);
    auto g = [&](double rp) { return (h0 - h(rp)) / (rp * rp); };
    const double a0 = 1e-6 * scale;
    double sum = a0 * g(a0);
    for (double a = a0; a < scale;) {
      const double b = std::min(2.0 * a, scale);
      sum += gauss<double, 20>::integrate(g, a, b);
      a = b;
    }
    exp_sinh<double> es;
    out.value = sum + es.integrate(g, scale, std::numeric_limits<double>::infinity(), kTol);
    return out;
  }

  // f(r') = h(r') r' E(k) / (r + r'); E from the complement keeps precision near r' = r.
  auto f = [&](double rp) {
    if (rp <= 0.0) return 0.0;
    return h(rp) * rp * ellip_e_complement(kernel_complement(r, rp)) / (r + rp);
  };
  auto outer_integrand = [&](double rp) {
    const double d = rp - r;
    return f(rp) / (d * d);
  };

  const double delta = 0.5 * r;
  const double h_r = h(r);
  const double fold = fold_window<20>(f, r, delta, h_r);
  const double fold_check = fold_window<10>(f, r, delta, h_r);
  const double local = fold - 2.0 * f(r) / delta;

  double err = 0.0;
  const double left = gauss_kronrod<double, 61>::integrate(outer_integrand, 0.0, r - delta, 12, kTol, &err);
  exp_sinh<double> es;
  const double right = es.integrate(outer_integrand, r + delta, std::numeric_limits<double>::infinity(), kTol);

  const double fp = local + left + right;
  out.value = -inv_pi2 * fp;
  const double mag = std::max({std::abs(fold), std::abs(fp), std::abs(h_r) / r});
  out.accuracy_warning = std::abs(fold - fold_check) > 1e-8 * mag;
  return out;
}

double g1_direct(const RadialProfile& p, double r) {
  if (r > p.grid->r_max()) throw DomainError("g1_direct: radius beyond the outermost grid node");
  const auto c = p.grid->coefficients(p.h);
  const RadialGrid& g = *p.grid;
  return g1_direct([&](double rr) { return g.evaluate(c, rr); }, r, g.scale()).value;
}

}  // namespace bo2d
