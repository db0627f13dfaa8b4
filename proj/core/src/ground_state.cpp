#include "bo2d/ground_state.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "bo2d/error.hpp"
#include "bo2d/radial_operator.hpp"
#include "radial_matrix.hpp"

namespace bo2d {

RadialGridPtr default_ground_state_grid(double vstar, std::size_t nodes) {
  if (!(vstar > 0.0) || !std::isfinite(vstar)) throw DomainError("ground state: vstar must be positive");
  return std::make_shared<const RadialGrid>(nodes, 1.0 / vstar);
}

double steady_residual(const RadialProfile& p, double vstar) {
  const RadialProfile g = g1_hankel(p);
  double res = 0.0, hmax = 0.0;
  for (std::size_t i = 0; i < p.h.size(); ++i) {
    const double h = p.h[i];
    res = std::max(res, std::abs(vstar * h + g.h[i] - 0.5 * h * h));
    hmax = std::max(hmax, std::abs(h));
  }
  return hmax > 0.0 ? res / hmax : res;
}

GroundState solve_ground_state(double vstar, const RadialGridPtr& grid, const GroundStateOptions& opt) {
  if (!(vstar > 0.0) || !std::isfinite(vstar)) throw DomainError("ground state: vstar must be positive");
  const RadialGrid& g = *grid;
  const auto n = static_cast<Eigen::Index>(g.size());
  const auto wr = g.area_weights();
  Eigen::Map<const Eigen::VectorXd> w(wr.data(), n);

  const Eigen::MatrixXd gm = detail::g1_matrix(g);
  Eigen::MatrixXd lop = gm;
  lop.diagonal().array() += vstar;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(lop);

  Eigen::VectorXd h(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double vr = vstar * g.r()[static_cast<std::size_t>(i)];
    h(i) = 4.0 * vstar / (1.0 + vr * vr);
  }

  GroundState out;
  out.vstar = vstar;
  for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
    const Eigen::VectorXd nh = 0.5 * h.cwiseProduct(h);
    const Eigen::VectorXd lh = lop * h;
    const double s = w.dot(h.cwiseProduct(lh)) / w.dot(h.cwiseProduct(nh));
    h = (s * s) * lu.solve(nh);
    if (!h.allFinite()) throw ConvergenceError("ground state: iteration diverged", out.residual);

    const Eigen::VectorXd r = lop * h - 0.5 * h.cwiseProduct(h);
    out.residual = r.cwiseAbs().maxCoeff() / h.cwiseAbs().maxCoeff();
    out.residual_history.push_back(out.residual);
    out.stabilizer = s;
    out.iterations = it;
    if (out.residual < opt.tolerance) break;
  }
  if (!(out.residual < opt.tolerance))
    throw ConvergenceError("ground state: no convergence within the iteration budget", out.residual);

  out.profile = RadialProfile{grid, std::vector<double>(h.data(), h.data() + n), 0.0};
  out.profile.estimate_decay();
  out.ground_mode = std::all_of(out.profile.h.begin(), out.profile.h.end(), [](double v) { return v > 0.0; });
  return out;
}

BoFit bo_fit(const RadialProfile& p) {
  const double h0 = p.h.front();
  for (double v : p.h)
    if (!(v > 0.0)) throw DomainError("bo_fit: profile must be positive");

  const auto nodes = p.grid->r();
  const double a_guess = h0 / 4.0;
  BoFit fit;
  fit.r_fit = 3.0 / a_guess;
  std::vector<double> r, h, w;
  for (std::size_t i = 0; i < nodes.size() && nodes[i] <= fit.r_fit; ++i) {
    r.push_back(nodes[i]);
    h.push_back(p.h[i]);
    w.push_back(p.h[i] / h0);
  }
  fit.samples = r.size();
  if (fit.samples < 3) throw DomainError("bo_fit: fewer than three nodes inside the fit range");

  // Scalar Gauss-Newton on a0.
  auto model = [](double a, double x) { return 4.0 * a / (1.0 + a * a * x * x); };
  auto dmodel = [](double a, double x) {
    const double q = 1.0 + a * a * x * x;
    return 4.0 * (1.0 - a * a * x * x) / (q * q);
  };
  double a = a_guess;
  for (int it = 0; it < 100; ++it) {
    double jtj = 0.0, jtr = 0.0;
    for (std::size_t i = 0; i < fit.samples; ++i) {
      const double j = dmodel(a, r[i]);
      jtj += w[i] * j * j;
      jtr += w[i] * j * (h[i] - model(a, r[i]));
    }
    const double step = jtr / jtj;
    a += step;
    if (std::abs(step) < 1e-15 * std::abs(a)) break;
  }

  double ssr = 0.0, jtj = 0.0;
  for (std::size_t i = 0; i < fit.samples; ++i) {
    const double res = h[i] - model(a, r[i]);
    const double j = dmodel(a, r[i]);
    ssr += w[i] * res * res;
    jtj += w[i] * j * j;
  }
  const double dof = static_cast<double>(fit.samples - 1);
  const boost::math::students_t dist(dof);
  const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
  fit.a0 = a;
  fit.ci95 = t * std::sqrt(ssr / dof / jtj);

  double mis = 0.0;
  std::size_t cnt = 0;
  for (std::size_t i = 0; i < nodes.size() && nodes[i] <= 3.0 / a; ++i) {
    const double d = p.h[i] - model(a, nodes[i]);
    mis += d * d;
    ++cnt;
  }
  fit.misfit = cnt > 0 ? std::sqrt(mis / static_cast<double>(cnt)) / h0 : 0.0;
  return fit;
}

}  // namespace bo2d
