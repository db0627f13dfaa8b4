#include "bo2d/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bo2d/error.hpp"
#include "bo2d/spectral_ops.hpp"

namespace bo2d {

void SimConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("SimConfig: dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("SimConfig: t_end must be non-negative");
  if (!(blowup_amp > 0.0)) throw DomainError("SimConfig: blowup_amp must be positive");
  if (!(tail_frac > 0.0 && tail_frac < 1.0)) throw DomainError("SimConfig: tail_frac must lie in (0, 1)");
  if (!(norm_drift_tol > 0.0)) throw DomainError("SimConfig: norm_drift_tol must be positive");
}

SimConfig default_sim_config(const SpectralField2D& ic, double t_end) {
  SimConfig cfg;
  const double a0 = ic.max_abs();
  const Grid2D& g = ic.grid();
  // Advective limit, and the linear term i kx |k| inside the RK4 stability interval.
  const double kx = g.kx_max() * 2.0 / 3.0;
  const double kk = std::hypot(kx, g.ky_max() * 2.0 / 3.0);
  cfg.dt = std::min(0.25 * g.dx() / std::max(1.0, a0), 1.5 / (kx * kk));
  cfg.t_end = t_end;
  cfg.blowup_amp = a0 > 0.0 ? 50.0 * a0 : 1.0;
  return cfg;
}

const char* to_string(RunStatus s) noexcept {
  switch (s) {
    case RunStatus::running: return "running";
    case RunStatus::blown_up: return "blown_up";
    case RunStatus::under_resolved: return "under_resolved";
    case RunStatus::completed: return "completed";
  }
  return "unknown";
}

Rk4Stepper::Rk4Stepper(GridPtr grid, RhsOptions opt)
    : grid_(std::move(grid)),
      opt_(opt),
      k_(grid_->spectral_size()),
      acc_(grid_->spectral_size()),
      stage_(grid_->spectral_size()),
      work_(grid_->spectral_size()),
      u_(grid_->size()) {}

void Rk4Stepper::eval_rhs(std::span<const Complex> a, std::span<Complex> out) {
  const Grid2D& g = *grid_;
  const std::size_t n = g.spectral_size();

  // out = -|k| a, then += (A^2/2)^, then *= -i kx.
  std::copy(a.begin(), a.end(), out.begin());
  detail::multiply_abs_k(g, out);
  for (auto& c : out) c = -c;

  if (opt_.nonlinear) {
    std::copy(a.begin(), a.end(), work_.begin());
    if (opt_.dealias) detail::zero_aliased(g, work_);
    detail::inverse(g, work_, u_);
    for (auto& v : u_) v = 0.5 * v * v;
    detail::forward(g, u_, work_);
    for (std::size_t i = 0; i < n; ++i) out[i] += work_[i];
  }
  detail::multiply_i_kx(g, out);
  for (auto& c : out) c = -c;
  if (opt_.dealias) detail::zero_aliased(g, out);
}

void Rk4Stepper::step(std::span<Complex> state, double dt) {
  const std::size_t n = state.size();
  eval_rhs(state, k_);
  for (std::size_t i = 0; i < n; ++i) {
    acc_[i] = k_[i];
    stage_[i] = state[i] + (0.5 * dt) * k_[i];
  }
  eval_rhs(stage_, k_);
  for (std::size_t i = 0; i < n; ++i) {
    acc_[i] += 2.0 * k_[i];
    stage_[i] = state[i] + (0.5 * dt) * k_[i];
  }
  eval_rhs(stage_, k_);
  for (std::size_t i = 0; i < n; ++i) {
    acc_[i] += 2.0 * k_[i];
    stage_[i] = state[i] + dt * k_[i];
  }
  eval_rhs(stage_, k_);
  for (std::size_t i = 0; i < n; ++i) state[i] += (dt / 6.0) * (acc_[i] + k_[i]);
}

SpectralField2D rhs(const SpectralField2D& a, const RhsOptions& opt) {
  require_finite(a, "rhs");
  Rk4Stepper st(a.grid_ptr(), opt);
  SpectralField2D out(a.grid_ptr());
  st.eval_rhs(a.spectral(), out.spectral_mut());
  return out;
}

SpectralField2D rk4_step(const SpectralField2D& a, double dt, const RhsOptions& opt) {
  if (!(dt > 0.0)) throw DomainError("rk4_step: dt must be positive");
  require_finite(a, "rk4_step input");
  Rk4Stepper st(a.grid_ptr(), opt);
  SpectralField2D out = a;
  st.step(out.spectral_mut(), dt);
  require_finite(out, "rk4_step result");
  return out;
}

namespace {

bool finite_coeffs(std::span<const Complex> c) {
  for (const auto& z : c)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

}  // namespace

std::pair<CollapseTrace, StepResult> run(const SpectralField2D& ic, const SimConfig& cfg, const RunSinks& sinks) {
  cfg.validate();
  require_finite(ic, "run");

  const GridPtr& grid = ic.grid_ptr();
  Rk4Stepper stepper(grid, RhsOptions{cfg.dealias, cfg.nonlinear});
  CollapseTrace trace;
  StepResult res{0.0, 0, ic, RunStatus::running, {}};

  const double a0 = ic.max_abs();
  const auto n_steps = static_cast<std::size_t>(std::llround(std::ceil(cfg.t_end / cfg.dt - 1e-9)));

  auto record = [&](std::size_t step, double tau) {
    const PeakState p = locate_peak(res.field, tau, cfg.peak_refinement);
    trace.push(p);
    if (sinks.on_peak) sinks.on_peak(p);
    const ConservedSet cs = conserved(res.field);
    trace.conserved_history.emplace_back(tau, cs);
    if (cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0) {
      trace.snapshots.push_back(SnapshotRef{step, tau, {}});
      if (sinks.on_snapshot) sinks.on_snapshot(step, tau, res.field, cs);
    }
    return p;
  };

  record(0, 0.0);

  for (std::size_t s = 1; s <= n_steps; ++s) {
    stepper.step(res.field.spectral_mut(), cfg.dt);
    res.steps = s;
    res.tau = static_cast<double>(s) * cfg.dt;
    if (!finite_coeffs(res.field.spectral())) {
      res.status = RunStatus::under_resolved;
      res.reason = "non-finite state";
      return {std::move(trace), std::move(res)};
    }
    const double tail = spectral_tail_fraction(res.field, cfg.dealias);
    if (sinks.on_tail) sinks.on_tail(res.tau, tail);
    PeakState p;
    try {
      p = record(s, res.tau);
    } catch (const AmbiguityError& e) {
      res.status = RunStatus::under_resolved;
      res.reason = std::string("peak split: ") + e.what();
      return {std::move(trace), std::move(res)};
    }
    const double px0 = trace.conserved_history.front().second.px;
    const double px_drift = px0 > 0.0 ? std::abs(trace.conserved_history.back().second.px - px0) / px0 : 0.0;
    if (px_drift > cfg.norm_drift_tol) {
      std::ostringstream os;
      os << "L2 norm drift " << px_drift << " (unstable step)";
      res.status = RunStatus::under_resolved;
      res.reason = os.str();
    } else if (p.amax > cfg.blowup_amp) {
      res.status = RunStatus::blown_up;
      res.reason = "amplitude threshold";
    } else if (tail > cfg.tail_frac) {
      std::ostringstream os;
      os << "spectral tail fraction " << tail;
      res.status = a0 > 0.0 && p.amax >= 2.0 * a0 ? RunStatus::blown_up : RunStatus::under_resolved;
      res.reason = os.str();
    }
    if (res.status != RunStatus::running) return {std::move(trace), std::move(res)};
  }
  res.status = RunStatus::completed;
  return {std::move(trace), std::move(res)};
}

}  // namespace bo2d
