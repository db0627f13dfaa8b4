#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bo2d/diagnostics.hpp"
#include "bo2d/selfsim_fit.hpp"
#include "bo2d/spectral_field.hpp"

namespace bo2d {

/// Binary snapshot layout, all fields little-endian:
///
///   char[5]  "BO2D1"
///   u32      version (1)
///   u32      float code (8 = IEEE-754 binary64)
///   u64      nx, ny
///   f64      Lx, Ly, tau
///   f64[nx*ny] values, row-major with rows along y (index j*nx + i)
///
/// A text sidecar `<path>.meta` holds tau, step and the ConservedSet.
inline constexpr char kSnapshotMagic[5] = {'B', 'O', '2', 'D', '1'};
inline constexpr std::uint32_t kSnapshotVersion = 1;

struct SnapshotFile {
  double tau = 0.0;
  std::size_t step = 0;
  GridPtr grid;
  std::vector<double> values;
  ConservedSet conserved;
  bool has_sidecar = false;

  SpectralField2D field() const;
};

/// Throws IoError on any write failure.
void write_snapshot(const std::string& path, const SpectralField2D& a, double tau, std::size_t step,
                    const ConservedSet& cs);
/// Throws IoError when unreadable and ParseError on a malformed header or
/// truncated payload. A missing sidecar leaves has_sidecar false.
SnapshotFile read_snapshot(const std::string& path);

/// Header of the trace CSV.
inline constexpr const char* kTraceHeader = "tau,amax,xm,ym,sigma_ratio,M,Px,Py,H";

/// One row per PeakState with the ConservedSet recorded at the same tau.
void write_trace_csv(std::ostream& os, const CollapseTrace& trace);
void write_trace_csv(const std::string& path, const CollapseTrace& trace);

/// Throws ParseError on malformed content.
CollapseTrace read_trace_csv(std::istream& is);
CollapseTrace read_trace_csv(const std::string& path);

/// Formats with 17 significant digits.
std::string format_double(double v);

/// Writes whitespace-separated columns; every column must have the same length.
void write_columns(const std::string& path, const std::string& header, const std::vector<std::vector<double>>& cols);

}  // namespace bo2d
