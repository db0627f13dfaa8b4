#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "bo2d/diagnostics.hpp"
#include "bo2d/spectral_field.hpp"

namespace bo2d {

/// Switches for the right-hand side. `nonlinear = false` is a verification hook.
struct RhsOptions {
  bool dealias = true;
  bool nonlinear = true;
};

struct SimConfig {
  double dt = 0.0;
  double t_end = 0.0;
  /// Absolute amplitude abort threshold.
  double blowup_amp = 0.0;
  /// Abort once this fraction of spectral energy sits in the outer third of the band.
  double tail_frac = 0.05;
  /// Relative change of Px = 1/2 int A^2 that marks the step as unstable.
  double norm_drift_tol = 1e-2;
  /// Steps between snapshots handed to the sink; 0 disables snapshots.
  std::size_t snapshot_every = 0;
  bool dealias = true;
  bool nonlinear = true;
  PeakRefinement peak_refinement = PeakRefinement::spectral;

  /// Throws DomainError on invalid fields.
  void validate() const;
};

/// dt = min(0.25 dx / max(1, A_max(0)), 1.5 / (kx_max |k|_max)) over the
/// dealiased band, and blowup_amp = 50 A_max(0).
SimConfig default_sim_config(const SpectralField2D& ic, double t_end);

enum class RunStatus { running, blown_up, under_resolved, completed };

const char* to_string(RunStatus s) noexcept;

struct StepResult {
  double tau = 0.0;
  std::size_t steps = 0;
  SpectralField2D field;
  RunStatus status = RunStatus::running;
  std::string reason;
};

/// Output hooks of `run`. Exceptions thrown by a sink abort the run and
/// propagate (IoError for write failures).
struct RunSinks {
  std::function<void(const PeakState&)> on_peak;
  /// Spectral tail fraction after every step.
  std::function<void(double tau, double tail_fraction)> on_tail;
  std::function<void(std::size_t step, double tau, const SpectralField2D&, const ConservedSet&)> on_snapshot;
};

/// -d/dx (A^2/2 - G[A]). With dealiasing the square is formed from the
/// 2/3-truncated field and the result is truncated again.
SpectralField2D rhs(const SpectralField2D& a, const RhsOptions& opt = {});

/// One classical fourth-order Runge-Kutta step. Throws NonFiniteError when the
/// new state is not finite.
SpectralField2D rk4_step(const SpectralField2D& a, double dt, const RhsOptions& opt = {});

/// Allocation-free RK4 on half-complex coefficient buffers.
class Rk4Stepper {
 public:
  Rk4Stepper(GridPtr grid, RhsOptions opt);

  void eval_rhs(std::span<const Complex> a, std::span<Complex> out);
  void step(std::span<Complex> state, double dt);

  const Grid2D& grid() const noexcept { return *grid_; }

 private:
  GridPtr grid_;
  RhsOptions opt_;
  ComplexBuffer k_, acc_, stage_, work_;
  RealBuffer u_;
};

/// Advances `ic` by ceil(t_end / dt) uniform steps, or until an abort
/// criterion or a non-finite state.
///
/// A relative Px change above norm_drift_tol ends the run as under_resolved
/// (an unstable step), as does a step whose maximum is split over non-adjacent
/// nodes. A_max above blowup_amp ends it as blown_up. Exceeding tail_frac ends
/// it as blown_up when A_max has at least doubled (the collapse outran the
/// grid) and as under_resolved otherwise. The trace gets one PeakState and one
/// ConservedSet per step.
std::pair<CollapseTrace, StepResult> run(const SpectralField2D& ic, const SimConfig& cfg, const RunSinks& sinks = {});

}  // namespace bo2d
