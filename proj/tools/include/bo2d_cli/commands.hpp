#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

namespace bo2d::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kParseError = 2,
  kRuntimeAbort = 3,
  kIoError = 4,
};

struct SimulateArgs {
  std::string config;
  std::optional<std::string> out;
};

struct FitArgs {
  std::string trace;
  std::optional<std::pair<double, double>> window;
  /// Where plot data goes; defaults to the directory of the trace.
  std::optional<std::string> out;
};

struct GroundStateArgs {
  double vstar = 0.0;
  std::optional<double> rmax;
  std::size_t nodes = 256;
  std::string out = ".";
};

/// Writes trace.csv, status.txt, the effective config and snapshots to the
/// output directory. blown_up and completed exit 0, under_resolved exits 3.
int cmd_simulate(const SimulateArgs& args, std::ostream& log);

/// Fits the trace, prints the report and writes fit.csv, loglog_data.dat,
/// loglog_fit.dat and, when snapshots sit next to the trace, profile_*.dat.
int cmd_fit(const FitArgs& args, std::ostream& log);

/// Writes groundstate.csv (r, h, Lorentzian), groundstate_fit.txt and
/// groundstate_residual.dat.
int cmd_groundstate(const GroundStateArgs& args, std::ostream& log);

/// One line per check: name, PASS/FAIL, measured, tolerance.
int cmd_check(const std::string& suite, std::ostream& log);

/// Parses "lo:hi"; throws ParseError.
std::pair<double, double> parse_window(const std::string& s);

}  // namespace bo2d::cli
