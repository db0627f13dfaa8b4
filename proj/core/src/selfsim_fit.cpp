#include "bo2d/selfsim_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>

#include "bo2d/error.hpp"

namespace bo2d {

namespace {

struct Params {
  double lambda, tau_c, logc;
};

double ssr_of(const std::vector<double>& t, const std::vector<double>& y, const Params& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = y[i] - (-p.lambda * std::log(p.tau_c - t[i]) + p.logc);
    s += r * r;
  }
  return s;
}

// Linear least squares in (lambda, log C) for a fixed tau_c.
Params linear_given_tau_c(const std::vector<double>& t, const std::vector<double>& y, double tau_c) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double x = -std::log(tau_c - t[i]);
    sx += x;
    sy += y[i];
    sxx += x * x;
    sxy += x * y[i];
  }
  const double den = n * sxx - sx * sx;
  const double lam = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
  return {lam, tau_c, (sy - lam * sx) / n};
}

Params levenberg_marquardt(const std::vector<double>& t, const std::vector<double>& y, Params p, double t_last) {
  double mu = 1e-3;
  double ssr = ssr_of(t, y, p);
  for (int it = 0; it < 500; ++it) {
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double d = p.tau_c - t[i];
      const double r = y[i] - (-p.lambda * std::log(d) + p.logc);
      const Eigen::Vector3d j(-std::log(d), -p.lambda / d, 1.0);
      jtj += j * j.transpose();
      jtr += j * r;
    }
    bool improved = false;
    for (int k = 0; k < 30; ++k) {
      Eigen::Matrix3d a = jtj;
      a.diagonal() += mu * jtj.diagonal().cwiseMax(1e-300);
      const Eigen::Vector3d step = a.ldlt().solve(jtr);
      const Params q{p.lambda + step(0), p.tau_c + step(1), p.logc + step(2)};
      if (q.tau_c > t_last && std::isfinite(q.lambda)) {
        const double s = ssr_of(t, y, q);
        if (s < ssr) {
          const double rel = (ssr - s) / std::max(ssr, 1e-300);
          p = q;
          ssr = s;
          mu = std::max(mu / 3.0, 1e-12);
          improved = true;
          if (rel < 1e-15 || step.norm() < 1e-14 * (1.0 + std::abs(p.tau_c))) return p;
          break;
        }
      }
      mu *= 4.0;
    }
    if (!improved) break;
  }
  return p;
}

std::pair<std::size_t, std::size_t> select_window(std::span<const double> tau, std::span<const double> amax,
                                                  const WindowPolicy& policy) {
  const std::size_t n = tau.size();
  if (policy.explicit_window) {
    const auto [lo, hi] = *policy.explicit_window;
    if (!(hi > lo)) throw FitError("fit window must satisfy lo < hi");
    std::size_t a = n, b = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (tau[i] >= lo && tau[i] <= hi) {
        a = std::min(a, i);
        b = i;
      }
    }
    if (a == n) throw FitError("fit window contains no trace points");
    return {a, b};
  }
  if (n <= policy.exclude_last) throw FitError("trace too short for the fit window");
  const double start = policy.growth_start * amax[0];
  std::size_t a = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (amax[i] >= start) {
      a = i;
      break;
    }
  }
  if (a == n) throw FitError("A_max never reaches the window start; no collapse to fit");
  std::size_t b = n - 1 - policy.exclude_last;
  if (b <= a) throw FitError("degenerate fit window");
  if (policy.stop_at_peak_rate) {
    // Log growth rate by centred differences; a resolved collapse accelerates
    // up to the abort, a grid-arrested one peaks and then slows down.
    constexpr std::size_t k = 5;
    double best = -std::numeric_limits<double>::infinity();
    std::size_t arg = b;
    for (std::size_t i = std::max(a, k); i + k < n && i <= b; ++i) {
      if (!(amax[i - k] > 0.0)) continue;
      const double r = std::log(amax[i + k] / amax[i - k]) / (tau[i + k] - tau[i - k]);
      if (r > best) {
        best = r;
        arg = i;
      }
    }
    b = std::min(b, arg);
    if (b <= a) throw FitError("growth rate peaks before the fit window opens");
  }
  return {a, b};
}

}  // namespace

SelfSimFit fit_exponent(std::span<const double> tau, std::span<const double> amax, const WindowPolicy& policy) {
  if (tau.size() != amax.size()) throw FitError("tau and A_max lengths differ");
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (!std::isfinite(tau[i]) || !std::isfinite(amax[i])) throw FitError("non-finite trace entry");
    if (i > 0 && !(tau[i] > tau[i - 1])) throw FitError("trace tau must increase");
  }
  if (tau.empty()) throw FitError("empty trace");
  const auto [a, b] = select_window(tau, amax, policy);
  const std::size_t m = b - a + 1;
  if (m < 30) throw FitError("fit window holds fewer than 30 points");

  std::vector<double> t(m), y(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(amax[a + i] > 0.0)) throw FitError("A_max must be positive in the fit window");
    t[i] = tau[a + i];
    y[i] = std::log(amax[a + i]);
    if (i > 0 && amax[a + i] < amax[a + i - 1] * (1.0 - policy.monotone_tolerance))
      throw FitError("A_max is not monotone in the fit window");
  }
  if (!(y.back() > y.front())) throw FitError("A_max does not grow across the fit window");

  // Growth time scale 1 / (d log A / d tau) over the last tenth of the window.
  const std::size_t k = std::max<std::size_t>(2, m / 10);
  const double dlog = y[m - 1] - y[m - 1 - k];
  const double growth = dlog > 0.0 ? (t[m - 1] - t[m - 1 - k]) / dlog : (t[m - 1] - t[0]);
  const double t_last = t.back();

  Params best{0.0, 0.0, 0.0};
  double best_ssr = std::numeric_limits<double>::infinity();
  for (double f : {0.01, 0.03, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const Params start = linear_given_tau_c(t, y, t_last + f * growth);
    const Params p = levenberg_marquardt(t, y, start, t_last);
    const double s = ssr_of(t, y, p);
    if (s < best_ssr && p.lambda > 0.0) {
      best_ssr = s;
      best = p;
    }
  }
  if (!std::isfinite(best_ssr)) throw FitError("no positive exponent fits the window");

  Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < m; ++i) {
    const double d = best.tau_c - t[i];
    const Eigen::Vector3d j(-std::log(d), -best.lambda / d, 1.0);
    jtj += j * j.transpose();
  }
  const double dof = static_cast<double>(m - 3);
  const double s2 = best_ssr / dof;
  const Eigen::Matrix3d cov = s2 * jtj.inverse();
  const boost::math::students_t dist(dof);
  const double tq = boost::math::quantile(boost::math::complement(dist, 0.025));

  SelfSimFit fit;
  fit.lambda = best.lambda;
  fit.tau_c = best.tau_c;
  fit.prefactor = std::exp(best.logc);
  fit.tau_lo = t.front();
  fit.tau_hi = t.back();
  fit.rms_residual = std::sqrt(best_ssr / static_cast<double>(m));
  fit.ci95 = tq * std::sqrt(std::max(cov(0, 0), 0.0));
  fit.tau_c_ci95 = tq * std::sqrt(std::max(cov(1, 1), 0.0));
  fit.points = m;
  return fit;
}

SelfSimFit fit_exponent(const CollapseTrace& trace, const WindowPolicy& policy) {
  std::vector<double> tau, amax;
  tau.reserve(trace.peaks.size());
  amax.reserve(trace.peaks.size());
  for (const auto& p : trace.peaks) {
    tau.push_back(p.tau);
    amax.push_back(p.amax);
  }
  return fit_exponent(tau, amax, policy);
}

std::vector<double> section_x(const SpectralField2D& a, double y0, std::span<const double> x) {
  const Grid2D& g = a.grid();
  const auto c = a.spectral();
  const std::size_t nkx = g.nkx();
  const double ys = y0 + 0.5 * g.ly();
  std::vector<Complex> b(nkx, Complex(0.0));
  for (std::size_t j = 0; j < g.ny(); ++j) {
    const Complex e = std::polar(1.0, g.ky()[j] * ys);
    for (std::size_t i = 0; i < nkx; ++i) b[i] += c[j * nkx + i] * e;
  }
  std::vector<double> out(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) {
    const double xs = x[p] + 0.5 * g.lx();
    Complex s(0.0);
    for (std::size_t i = 0; i < nkx; ++i) {
      const double w = (i == 0 || i == g.nx() / 2) ? 1.0 : 2.0;
      s += w * b[i] * std::polar(1.0, g.kx()[i] * xs);
    }
    out[p] = s.real();
  }
  return out;
}

std::vector<double> section_y(const SpectralField2D& a, double x0, std::span<const double> y) {
  const Grid2D& g = a.grid();
  const auto c = a.spectral();
  const std::size_t nkx = g.nkx();
  const double xs = x0 + 0.5 * g.lx();
  std::vector<Complex> ex(nkx);
  for (std::size_t i = 0; i < nkx; ++i) {
    const double w = (i == 0 || i == g.nx() / 2) ? 1.0 : 2.0;
    ex[i] = w * std::polar(1.0, g.kx()[i] * xs);
  }
  std::vector<Complex> d(g.ny(), Complex(0.0));
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < nkx; ++i) d[j] += c[j * nkx + i] * ex[i];
  std::vector<double> out(y.size());
  for (std::size_t p = 0; p < y.size(); ++p) {
    const double ys = y[p] + 0.5 * g.ly();
    Complex s(0.0);
    for (std::size_t j = 0; j < g.ny(); ++j) s += d[j] * std::polar(1.0, g.ky()[j] * ys);
    out[p] = s.real();
  }
  return out;
}

std::vector<RescaledProfile> rescale_snapshots(std::span<const Snapshot> snapshots, const SelfSimFit& fit, double xi_max,
                                               std::size_t samples, std::vector<std::string>* notices) {
  if (!(fit.lambda > 0.0) || !(fit.tau_c > fit.tau_hi)) throw FitError("rescale_snapshots: invalid fit");
  if (samples < 2 || !(xi_max > 0.0)) throw DomainError("rescale_snapshots: need at least two samples and xi_max > 0");
  std::vector<RescaledProfile> out;
  for (const auto& snap : snapshots) {
    if (snap.field == nullptr) throw DomainError("rescale_snapshots: missing field");
    if (snap.tau < fit.tau_lo || snap.tau > fit.tau_hi) {
      if (notices) {
        std::ostringstream os;
        os << "snapshot at tau = " << snap.tau << " lies outside the fit window, skipped";
        notices->push_back(os.str());
      }
      continue;
    }
    const PeakState pk = locate_peak(*snap.field, snap.tau, PeakRefinement::spectral);
    const double s = std::pow(fit.tau_c - snap.tau, fit.lambda);
    RescaledProfile p;
    p.tau = snap.tau;
    p.xi1.resize(samples);
    for (std::size_t i = 0; i < samples; ++i)
      p.xi1[i] = -xi_max + 2.0 * xi_max * static_cast<double>(i) / static_cast<double>(samples - 1);
    p.xi2 = p.xi1;
    std::vector<double> xs(samples), ys(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      xs[i] = pk.xm + p.xi1[i] * s;
      ys[i] = pk.ym + p.xi2[i] * s;
    }
    p.h1 = section_x(*snap.field, pk.ym, xs);
    p.h2 = section_y(*snap.field, pk.xm, ys);
    for (auto& v : p.h1) v *= s;
    for (auto& v : p.h2) v *= s;
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

// Sum of squared differences and reference norm over the common xi support.
void accumulate(const std::vector<double>& xa, const std::vector<double>& ha, const std::vector<double>& xb,
                const std::vector<double>& hb, double& diff, double& ref, std::size_t& count) {
  const double lo = std::max(xa.front(), xb.front());
  const double hi = std::min(xa.back(), xb.back());
  for (std::size_t i = 0; i < xb.size(); ++i) {
    const double x = xb[i];
    if (x < lo || x > hi) continue;
    // Linear interpolation of profile a at x.
    const auto it = std::lower_bound(xa.begin(), xa.end(), x);
    std::size_t k = static_cast<std::size_t>(it - xa.begin());
    double va;
    if (k < xa.size() && xa[k] == x) {
      va = ha[k];
    } else {
      k = std::clamp<std::size_t>(k, 1, xa.size() - 1);
      const double w = (x - xa[k - 1]) / (xa[k] - xa[k - 1]);
      va = (1.0 - w) * ha[k - 1] + w * ha[k];
    }
    diff += (va - hb[i]) * (va - hb[i]);
    ref += hb[i] * hb[i];
    ++count;
  }
}

}  // namespace

double collapse_quality(std::span<const RescaledProfile> profiles) {
  if (profiles.size() < 2) throw FitError("collapse_quality: need at least two profiles");
  double worst = 0.0;
  for (std::size_t a = 0; a < profiles.size(); ++a) {
    for (std::size_t b = a + 1; b < profiles.size(); ++b) {
      double diff = 0.0, ref = 0.0;
      std::size_t count = 0;
      accumulate(profiles[b].xi1, profiles[b].h1, profiles[a].xi1, profiles[a].h1, diff, ref, count);
      accumulate(profiles[b].xi2, profiles[b].h2, profiles[a].xi2, profiles[a].h2, diff, ref, count);
      if (count == 0 || ref == 0.0) throw FitError("collapse_quality: profiles do not overlap");
      worst = std::max(worst, std::sqrt(diff / ref));
    }
  }
  return worst;
}

double section_mismatch(const RescaledProfile& p, double xi_max) {
  double diff = 0.0, ref = 0.0;
  std::size_t count = 0;
  std::vector<double> x1, h1;
  for (std::size_t i = 0; i < p.xi1.size(); ++i) {
    if (std::abs(p.xi1[i]) <= xi_max) {
      x1.push_back(p.xi1[i]);
      h1.push_back(p.h1[i]);
    }
  }
  if (x1.size() < 2) throw FitError("section_mismatch: no samples within xi_max");
  accumulate(p.xi2, p.h2, x1, h1, diff, ref, count);
  if (count == 0 || ref == 0.0) throw FitError("section_mismatch: sections do not overlap");
  return std::sqrt(diff / ref);
}

}  // namespace bo2d
