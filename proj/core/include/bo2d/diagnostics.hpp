#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bo2d/spectral_field.hpp"

namespace bo2d {

/// Invariants of the flow at one time level.
struct ConservedSet {
  double mass = 0.0;        ///< M  = integral of A
  double px = 0.0;          ///< Px = 1/2 integral of A^2
  double py = 0.0;          ///< Py = 1/2 integral of A phi_y, phi_x = A, zero x-mean phi
  double i1 = 0.0;          ///< I1 = integral of A G[A]
  double i2 = 0.0;          ///< I2 = integral of A^3
  double hamiltonian = 0.0; ///< H  = I1/2 - I2/6
  /// False when the kx = 0 content of A exceeds 1e-12 of its L2 norm, in
  /// which case phi is only defined up to a y-dependent constant and Py uses
  /// the zero-mean convention.
  bool py_well_defined = true;
};

ConservedSet conserved(const SpectralField2D& a);

/// One-sided criterion: H < 0 guarantees collapse, H >= 0 says nothing.
bool collapse_predictor(const ConservedSet& cs) noexcept;

struct PeakState {
  double tau = 0.0;
  double amax = 0.0;
  double xm = 0.0;
  double ym = 0.0;
  /// RMS width in y over RMS width in x of the connected region above amax/2.
  double sigma_ratio = 1.0;
};

enum class PeakRefinement {
  /// Least-squares quadratic over the 3x3 neighbourhood of the grid argmax.
  quadratic,
  /// The quadratic estimate polished by Newton steps on the band-limited
  /// interpolant. Free of the grid-locking ripple the quadratic shows once
  /// the peak is only a few cells wide.
  spectral,
};

/// Grid argmax refined to sub-grid accuracy.
/// Throws AmbiguityError when an equal maximum sits at a non-adjacent point.
PeakState locate_peak(const SpectralField2D& a, double tau = 0.0, PeakRefinement refine = PeakRefinement::quadratic);

struct SnapshotRef {
  std::size_t step = 0;
  double tau = 0.0;
  std::string path;  ///< empty when the snapshot was only handed to an in-memory sink
};

/// Time series of a run. `peaks` is strictly increasing in tau.
struct CollapseTrace {
  std::vector<PeakState> peaks;
  std::vector<std::pair<double, ConservedSet>> conserved_history;
  std::vector<SnapshotRef> snapshots;

  /// Appends a peak; throws DomainError when tau does not increase.
  void push(const PeakState& p);
};

std::vector<std::pair<double, double>> symmetry_ratio_history(const CollapseTrace& trace);

/// Largest relative deviation of M, Px and H from their first recorded values.
struct ConservationDrift {
  double mass = 0.0;
  double px = 0.0;
  double hamiltonian = 0.0;
  double py_abs = 0.0;  ///< absolute, Py is often identically zero
};
ConservationDrift conservation_drift(const CollapseTrace& trace);

}  // namespace bo2d
