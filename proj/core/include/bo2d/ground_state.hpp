#pragma once

#include <cstddef>
#include <vector>

#include "bo2d/radial_grid.hpp"

namespace bo2d {

struct GroundStateOptions {
  std::size_t max_iterations = 1000;
  double tolerance = 1e-10;
};

struct GroundState {
  RadialProfile profile;
  double vstar = 0.0;
  /// max |V* h + G1[h] - h^2/2| / max |h| at the returned profile.
  double residual = 0.0;
  std::size_t iterations = 0;
  /// Last stabilizing factor; tends to 1 at a fixed point.
  double stabilizer = 0.0;
  /// False when the converged profile has negative lobes (not the ground mode).
  bool ground_mode = true;
  std::vector<double> residual_history;
};

/// Positive localized solution of  V* h + G1[h] = h^2 / 2  by Petviashvili
/// iteration
///   h <- S^2 (V* + G1)^{-1} (h^2 / 2),  S = <h, (V* + G1) h> / <h, h^2 / 2>,
/// inner products in the r dr measure, starting from 4 V* / (1 + V*^2 r^2).
/// A solution for V* is 1 * h_1(V* r) * V*, so the grid should scale like 1/V*.
/// Throws DomainError for vstar <= 0 and ConvergenceError when the budget runs out.
GroundState solve_ground_state(double vstar, const RadialGridPtr& grid, const GroundStateOptions& opt = {});

/// Grid used when none is given: 256 nodes with grading scale 1 / V*.
RadialGridPtr default_ground_state_grid(double vstar, std::size_t nodes = 256);

/// Residual of the steady equation through the Hankel-multiplier route.
double steady_residual(const RadialProfile& p, double vstar);

struct BoFit {
  double a0 = 0.0;
  double ci95 = 0.0;
  /// Rms of h - 4 a0 / (1 + a0^2 r^2) over the nodes in [0, 3/a0], scaled by h(0).
  double misfit = 0.0;
  double r_fit = 0.0;
  std::size_t samples = 0;
};

/// Least-squares fit of the Lorentzian 4 a0 / (1 + a0^2 r^2) on the grid nodes
/// in [0, 3 / a_guess] with a_guess = h(0) / 4, weighted by h / h(0).
/// ci95 comes from the linearized covariance with the Student t quantile.
/// Throws DomainError for profiles that are not positive.
BoFit bo_fit(const RadialProfile& p);

}  // namespace bo2d
