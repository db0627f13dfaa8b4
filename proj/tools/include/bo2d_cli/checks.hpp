#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace bo2d::cli {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

/// Names accepted by run_checks: all, dispersion, elliptic, radial, soliton,
/// conservation, groundstate.
const std::vector<std::string>& suite_names();

/// Throws DomainError for an unknown suite.
std::vector<CheckResult> run_checks(const std::string& suite);

// Individual oracle comparisons; each returns the measured error.

/// Max relative error of G on single Fourier modes against |k|.
double dispersion_symbol_error();
/// Max |E(k) - quadrature| over `samples` random moduli in [0, 1].
double elliptic_quadrature_error(std::size_t samples = 1000);
/// |E(0) - pi/2| and |E(1) - 1|.
double elliptic_endpoint_error();

/// Max |hankel - direct| / max|G h| over radii up to 4 for one test profile:
/// 0 Gaussian, 1 Lorentzian, 2 r^2 Gaussian.
double radial_cross_error(int profile);
/// Max |G2D[h] - G1[h]| / max|G1 h| along the positive x ray for a Gaussian
/// embedded in a periodic box.
double radial_embedding_error();

/// Max pointwise error of a y-independent periodic BO soliton after it has
/// travelled a quarter of the box, at nx points.
double soliton_transit_error(std::size_t nx = 1024);

/// Largest relative drift of M, Px, H over a short Gaussian run.
double short_run_drift();

}  // namespace bo2d::cli
