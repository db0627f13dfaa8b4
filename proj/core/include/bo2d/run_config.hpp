#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "bo2d/initial_conditions.hpp"
#include "bo2d/integrator.hpp"

namespace bo2d {

enum class SnapshotFormat { bo2d1, none };

/// Everything `simulate` needs. Text form:
///
///   [grid]
///   nx = 512
///   ny = 128
///   lx = 128pi
///   ly = 32pi
///   [ic]
///   a = 0.5412
///   sigma_x = 6.25
///   sigma_y = 12.5
///   [sim]
///   dt = 0.01
///   t_end = 40
///   [output]
///   dir = out
///
/// Lengths accept a trailing "pi" factor ("128pi", "128*pi").
struct RunConfig {
  std::size_t nx = 512;
  std::size_t ny = 128;
  double lx = 0.0;
  double ly = 0.0;

  GaussianIC ic;
  /// Optional white-noise perturbation of relative size `noise`, drawn from seed.
  double noise = 0.0;
  std::optional<std::uint64_t> seed;

  /// Unset values take the integrator defaults derived from the initial field.
  std::optional<double> dt;
  double t_end = 0.0;
  std::optional<double> blowup_amp;
  double blowup_factor = 50.0;
  double tail_frac = 0.05;
  std::size_t snapshot_every = 0;
  bool dealias = true;
  PeakRefinement peak_refinement = PeakRefinement::spectral;

  std::string output_dir = "out";
  SnapshotFormat snapshot_format = SnapshotFormat::bo2d1;

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

/// Throws ParseError with the offending line number.
RunConfig parse_run_config(std::istream& in);
RunConfig parse_run_config_text(const std::string& text);
/// Throws IoError when the file cannot be read.
RunConfig load_run_config(const std::string& path);

/// Canonical text form; parse(serialize(c)) == c.
std::string serialize_run_config(const RunConfig& cfg);

bool operator==(const RunConfig& a, const RunConfig& b);

/// Builds the grid, the initial field and the integrator settings.
struct PreparedRun {
  GridPtr grid;
  SpectralField2D initial;
  SimConfig sim;
  bool image_overlap_warning = false;
};
PreparedRun prepare_run(const RunConfig& cfg);

}  // namespace bo2d
