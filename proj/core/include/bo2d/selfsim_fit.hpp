#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bo2d/diagnostics.hpp"
#include "bo2d/spectral_field.hpp"

namespace bo2d {

/// Exponent of the complete-balance self-similar family, reported for comparison.
inline constexpr double kCompleteBalanceLambda = 0.5;

struct WindowPolicy {
  /// The window opens where A_max first reaches this multiple of A_max(0).
  double growth_start = 3.0;
  /// Trailing trace points dropped before the window closes.
  std::size_t exclude_last = 5;
  /// Close the window no later than the maximum of d log A_max / d tau.
  bool stop_at_peak_rate = true;
  /// Overrides the rules above when set (tau_lo, tau_hi).
  std::optional<std::pair<double, double>> explicit_window;
  /// Relative dip of A_max between consecutive points tolerated as noise.
  double monotone_tolerance = 1e-3;
};

/// log A_max = -lambda log(tau_c - tau) + log C over the window.
struct SelfSimFit {
  double lambda = 0.0;
  double tau_c = 0.0;
  double prefactor = 0.0;
  double tau_lo = 0.0;
  double tau_hi = 0.0;
  double rms_residual = 0.0;
  double ci95 = 0.0;
  double tau_c_ci95 = 0.0;
  std::size_t points = 0;
};

/// Joint Levenberg-Marquardt fit of (lambda, tau_c, log C) with multistart on
/// tau_c in (tau_hi, tau_hi + 10 T], T = A / (dA/dtau) at the window end.
/// Throws FitError for fewer than 30 window points, a window that does not
/// grow, or a non-monotone A_max inside the window.
SelfSimFit fit_exponent(std::span<const double> tau, std::span<const double> amax, const WindowPolicy& policy = {});
SelfSimFit fit_exponent(const CollapseTrace& trace, const WindowPolicy& policy = {});

/// Sections through the peak in self-similar variables.
struct RescaledProfile {
  double tau = 0.0;
  std::vector<double> xi1, h1;  ///< (x - x_m) / s, A s along y = y_m; s = (tau_c - tau)^lambda
  std::vector<double> xi2, h2;  ///< (y - y_m) / s, A s along x = x_m
};

struct Snapshot {
  double tau = 0.0;
  const SpectralField2D* field = nullptr;
};

/// Band-limited sections through the sub-grid peak of each snapshot, sampled
/// at `samples` uniform xi in [-xi_max, xi_max]. Snapshots outside the fit
/// window are skipped; a notice is appended for each when `notices` is given.
std::vector<RescaledProfile> rescale_snapshots(std::span<const Snapshot> snapshots, const SelfSimFit& fit,
                                               double xi_max = 2.0, std::size_t samples = 201,
                                               std::vector<std::string>* notices = nullptr);

/// Largest relative L2 distance between any two profiles (both sections,
/// common xi support), normalized by the earlier profile. Throws FitError for
/// fewer than two profiles or an empty overlap.
double collapse_quality(std::span<const RescaledProfile> profiles);

/// Relative L2 distance between the longitudinal and transverse sections of
/// one profile over |xi| <= xi_max.
double section_mismatch(const RescaledProfile& p, double xi_max = 2.0);

/// Values of the field along y = y0 at the given x (band-limited interpolation).
std::vector<double> section_x(const SpectralField2D& a, double y0, std::span<const double> x);
/// Values of the field along x = x0 at the given y.
std::vector<double> section_y(const SpectralField2D& a, double x0, std::span<const double> y);

}  // namespace bo2d
