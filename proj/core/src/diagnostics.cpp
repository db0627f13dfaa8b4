#include "bo2d/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bo2d/error.hpp"

namespace bo2d {

ConservedSet conserved(const SpectralField2D& a) {
  require_finite(a, "conserved");
  const Grid2D& g = a.grid();
  const double da = g.cell_area();
  const double area = g.lx() * g.ly();

  ConservedSet cs;
  double m = 0.0, p = 0.0, c3 = 0.0;
  for (double v : a.real()) {
    m += v;
    p += v * v;
    c3 += v * v * v;
  }
  cs.mass = m * da;
  cs.px = 0.5 * p * da;
  cs.i2 = c3 * da;

  auto c = a.spectral();
  const std::size_t nkx = g.nkx();
  const std::size_t nyq_x = g.nx() / 2;
  const std::size_t nyq_y = g.ny() / 2;
  double i1 = 0.0, py = 0.0, total = 0.0, zero_col = 0.0;
  for (std::size_t j = 0; j < g.ny(); ++j) {
    const double ky = g.ky()[j];
    const double ky_odd = j == nyq_y ? 0.0 : ky;
    for (std::size_t i = 0; i < nkx; ++i) {
      const double kx = g.kx()[i];
      const double w = (i == 0 || i == nyq_x) ? 1.0 : 2.0;
      const double e = w * std::norm(c[j * nkx + i]);
      total += e;
      i1 += std::sqrt(kx * kx + ky * ky) * e;
      if (i == 0) {
        zero_col += e;
      } else if (i != nyq_x) {
        py += (ky_odd / kx) * e;
      }
    }
  }
  cs.i1 = i1 * area;
  cs.py = 0.5 * py * area;
  cs.py_well_defined = total == 0.0 || zero_col <= 1e-12 * total;
  cs.hamiltonian = 0.5 * cs.i1 - cs.i2 / 6.0;
  return cs;
}

bool collapse_predictor(const ConservedSet& cs) noexcept { return cs.hamiltonian < 0.0; }

namespace {

std::size_t wrap(long i, std::size_t n) {
  const long m = static_cast<long>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

// Signed index distance on a periodic axis, in [-n/2, n/2).
long periodic_offset(std::size_t i, std::size_t i0, std::size_t n) {
  long d = static_cast<long>(i) - static_cast<long>(i0);
  const long m = static_cast<long>(n);
  if (d >= m / 2) d -= m;
  if (d < -m / 2) d += m;
  return d;
}

double half_max_ratio(const SpectralField2D& a, std::size_t i0, std::size_t j0, double amax) {
  const Grid2D& g = a.grid();
  const std::size_t nx = g.nx(), ny = g.ny();
  auto v = a.real();
  const double level = 0.5 * amax;

  std::vector<unsigned char> seen(g.size(), 0);
  std::vector<std::size_t> stack{j0 * nx + i0};
  seen[j0 * nx + i0] = 1;
  double w0 = 0.0, wx = 0.0, wy = 0.0, wxx = 0.0, wyy = 0.0;
  while (!stack.empty()) {
    const std::size_t idx = stack.back();
    stack.pop_back();
    const std::size_t i = idx % nx, j = idx / nx;
    const double w = v[idx] - level;
    const double x = static_cast<double>(periodic_offset(i, i0, nx)) * g.dx();
    const double y = static_cast<double>(periodic_offset(j, j0, ny)) * g.dy();
    w0 += w;
    wx += w * x;
    wy += w * y;
    wxx += w * x * x;
    wyy += w * y * y;
    const std::size_t nb[4] = {j * nx + wrap(static_cast<long>(i) + 1, nx), j * nx + wrap(static_cast<long>(i) - 1, nx),
                               wrap(static_cast<long>(j) + 1, ny) * nx + i, wrap(static_cast<long>(j) - 1, ny) * nx + i};
    for (std::size_t n : nb) {
      if (!seen[n] && v[n] > level) {
        seen[n] = 1;
        stack.push_back(n);
      }
    }
  }
  if (w0 <= 0.0) return 1.0;
  const double mx = wx / w0, my = wy / w0;
  const double sxx = wxx / w0 - mx * mx;
  const double syy = wyy / w0 - my * my;
  if (sxx <= 0.0 && syy <= 0.0) return 1.0;
  if (sxx <= 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(std::max(syy, 0.0) / sxx);
}

struct LocalJet {
  double v, vx, vy, vxx, vxy, vyy;
};

// Value, gradient and Hessian of the trigonometric interpolant at (x, y).
// Nyquist rows and columns are skipped; they carry no resolved content.
LocalJet spectral_jet(const SpectralField2D& a, double x, double y) {
  const Grid2D& g = a.grid();
  const auto c = a.spectral();
  const std::size_t nkx = g.nkx(), nyqx = g.nx() / 2, nyqy = g.ny() / 2;
  const double xs = x + 0.5 * g.lx(), ys = y + 0.5 * g.ly();
  std::vector<Complex> ex(nyqx);
  for (std::size_t i = 0; i < nyqx; ++i) ex[i] = (i == 0 ? 1.0 : 2.0) * std::polar(1.0, g.kx()[i] * xs);
  Complex v(0), vx(0), vy(0), vxx(0), vxy(0), vyy(0);
  const Complex I(0.0, 1.0);
  for (std::size_t j = 0; j < g.ny(); ++j) {
    if (j == nyqy) continue;
    const Complex* row = c.data() + j * nkx;
    Complex s0(0), s1(0), s2(0);
    for (std::size_t i = 0; i < nyqx; ++i) {
      const Complex t = row[i] * ex[i];
      const double k = g.kx()[i];
      s0 += t;
      s1 += k * t;
      s2 += k * k * t;
    }
    const double ky = g.ky()[j];
    const Complex ey = std::polar(1.0, ky * ys);
    v += s0 * ey;
    vx += I * s1 * ey;
    vxx -= s2 * ey;
    vy += I * ky * s0 * ey;
    vyy -= ky * ky * s0 * ey;
    vxy -= ky * s1 * ey;
  }
  return {v.real(), vx.real(), vy.real(), vxx.real(), vxy.real(), vyy.real()};
}

}  // namespace

PeakState locate_peak(const SpectralField2D& a, double tau, PeakRefinement refine) {
  require_finite(a, "locate_peak");
  const Grid2D& g = a.grid();
  const std::size_t nx = g.nx(), ny = g.ny();
  auto v = a.real();

  PeakState ps;
  ps.tau = tau;
  if (a.max_abs() == 0.0) {
    ps.sigma_ratio = 0.0;
    return ps;
  }

  const auto it = std::max_element(v.begin(), v.end());
  const std::size_t idx = static_cast<std::size_t>(it - v.begin());
  const std::size_t i0 = idx % nx, j0 = idx / nx;
  const double vmax = *it;

  const double tie = vmax - 1e-14 * std::abs(vmax);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] < tie || k == idx) continue;
    const long di = periodic_offset(k % nx, i0, nx);
    const long dj = periodic_offset(k / nx, j0, ny);
    if (std::labs(di) > 1 || std::labs(dj) > 1)
      throw AmbiguityError("locate_peak: equal maxima at non-adjacent grid points");
  }

  // Least-squares quadratic on the 3x3 stencil. The basis 1, x, y, x^2-2/3,
  // y^2-2/3, xy is orthogonal on {-1,0,1}^2.
  double s = 0, sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (int dj = -1; dj <= 1; ++dj) {
    for (int di = -1; di <= 1; ++di) {
      const double f = v[wrap(static_cast<long>(j0) + dj, ny) * nx + wrap(static_cast<long>(i0) + di, nx)];
      s += f;
      sx += di * f;
      sy += dj * f;
      sxx += (di * di - 2.0 / 3.0) * f;
      syy += (dj * dj - 2.0 / 3.0) * f;
      sxy += di * dj * f;
    }
  }
  const double c0 = s / 9.0, c1 = sx / 6.0, c2 = sy / 6.0;
  const double c3 = sxx / 2.0, c5 = syy / 2.0, c4 = sxy / 4.0;
  double ox = 0.0, oy = 0.0, amax = vmax;
  const double det = 4.0 * c3 * c5 - c4 * c4;
  if (c3 < 0.0 && det > 0.0) {
    ox = (-2.0 * c5 * c1 + c4 * c2) / det;
    oy = (-2.0 * c3 * c2 + c4 * c1) / det;
    if (std::abs(ox) <= 1.0 && std::abs(oy) <= 1.0) {
      amax = c0 + c1 * ox + c2 * oy + c3 * (ox * ox - 2.0 / 3.0) + c5 * (oy * oy - 2.0 / 3.0) + c4 * ox * oy;
      amax = std::max(amax, vmax);
    } else {
      ox = oy = 0.0;
    }
  }
  ps.amax = amax;
  ps.xm = g.x(i0) + ox * g.dx();
  ps.ym = g.y(j0) + oy * g.dy();
  if (refine == PeakRefinement::spectral) {
    double x = ps.xm, y = ps.ym;
    bool ok = false;
    LocalJet jet{};
    for (int it = 0; it < 8; ++it) {
      jet = spectral_jet(a, x, y);
      const double det2 = jet.vxx * jet.vyy - jet.vxy * jet.vxy;
      if (!(jet.vxx < 0.0 && det2 > 0.0)) break;
      const double dx = -(jet.vyy * jet.vx - jet.vxy * jet.vy) / det2;
      const double dy = -(jet.vxx * jet.vy - jet.vxy * jet.vx) / det2;
      x += dx;
      y += dy;
      if (std::abs(x - g.x(i0)) > 1.5 * g.dx() || std::abs(y - g.y(j0)) > 1.5 * g.dy()) break;
      if (std::abs(dx) < 1e-12 * g.dx() && std::abs(dy) < 1e-12 * g.dy()) {
        ok = true;
        break;
      }
    }
    if (ok) {
      jet = spectral_jet(a, x, y);
      ps.xm = x;
      ps.ym = y;
      ps.amax = std::max(jet.v, vmax);
    }
  }
  ps.sigma_ratio = half_max_ratio(a, i0, j0, amax);
  return ps;
}

void CollapseTrace::push(const PeakState& p) {
  if (!peaks.empty() && !(p.tau > peaks.back().tau)) throw DomainError("CollapseTrace: tau must increase strictly");
  peaks.push_back(p);
}

std::vector<std::pair<double, double>> symmetry_ratio_history(const CollapseTrace& trace) {
  std::vector<std::pair<double, double>> out;
  out.reserve(trace.peaks.size());
  for (const auto& p : trace.peaks) out.emplace_back(p.tau, p.sigma_ratio);
  return out;
}

ConservationDrift conservation_drift(const CollapseTrace& trace) {
  ConservationDrift d;
  if (trace.conserved_history.empty()) return d;
  const ConservedSet& c0 = trace.conserved_history.front().second;
  auto rel = [](double v, double ref) {
    if (ref == 0.0) return std::abs(v);
    return std::abs(v - ref) / std::abs(ref);
  };
  for (const auto& [tau, c] : trace.conserved_history) {
    d.mass = std::max(d.mass, rel(c.mass, c0.mass));
    d.px = std::max(d.px, rel(c.px, c0.px));
    d.hamiltonian = std::max(d.hamiltonian, rel(c.hamiltonian, c0.hamiltonian));
    d.py_abs = std::max(d.py_abs, std::abs(c.py - c0.py));
  }
  return d;
}

}  // namespace bo2d
