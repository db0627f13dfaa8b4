#include "bo2d_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "bo2d/error.hpp"
#include "bo2d/ground_state.hpp"
#include "bo2d/integrator.hpp"
#include "bo2d/persistence.hpp"
#include "bo2d/run_config.hpp"
#include "bo2d/selfsim_fit.hpp"
#include "bo2d_cli/checks.hpp"

namespace fs = std::filesystem;

namespace bo2d::cli {

namespace {

std::string fmt(double v) { return format_double(v); }

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
}

std::string snapshot_name(std::size_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%08zu.bo2d", step);
  return buf;
}

// Maps library exceptions onto exit codes.
template <class F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    log << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const IoError& e) {
    log << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const DomainError& e) {
    log << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const ConvergenceError& e) {
    log << "error: " << e.what() << " (last residual " << fmt(e.last_residual()) << ")\n";
    return kRuntimeAbort;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return kRuntimeAbort;
  }
}

}  // namespace

std::pair<double, double> parse_window(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ParseError("window must be lo:hi, got '" + s + "'");
  try {
    std::size_t p1 = 0, p2 = 0;
    const std::string a = s.substr(0, colon), b = s.substr(colon + 1);
    const double lo = std::stod(a, &p1);
    const double hi = std::stod(b, &p2);
    if (p1 != a.size() || p2 != b.size()) throw ParseError("window must be lo:hi, got '" + s + "'");
    if (!(hi > lo)) throw ParseError("window needs lo < hi");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ParseError("window must be lo:hi, got '" + s + "'");
  }
}

int cmd_simulate(const SimulateArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    RunConfig cfg = load_run_config(args.config);
    if (args.out) cfg.output_dir = *args.out;
    PreparedRun prep = prepare_run(cfg);
    prep.sim.validate();
    ensure_dir(cfg.output_dir);
    const fs::path dir(cfg.output_dir);
    {
      std::ofstream f(dir / "config.ini");
      f << serialize_run_config(cfg);
      if (!f) throw IoError("cannot write config copy in '" + cfg.output_dir + "'");
    }
    if (prep.image_overlap_warning) log << "warning: pulse wider than box/6, periodic images overlap\n";
    const ConservedSet c0 = conserved(prep.initial);
    log << "grid " << cfg.nx << "x" << cfg.ny << "  dt " << fmt(prep.sim.dt) << "  t_end " << fmt(prep.sim.t_end)
        << "  H " << fmt(c0.hamiltonian) << (collapse_predictor(c0) ? " (H < 0: collapse predicted)" : "") << "\n";

    std::vector<SnapshotRef> snaps;
    RunSinks sinks;
    if (cfg.snapshot_format == SnapshotFormat::bo2d1 && cfg.snapshot_every > 0) {
      sinks.on_snapshot = [&](std::size_t step, double tau, const SpectralField2D& a, const ConservedSet& cs) {
        const std::string path = (dir / snapshot_name(step)).string();
        write_snapshot(path, a, tau, step, cs);
        snaps.push_back({step, tau, path});
      };
    }
    auto [trace, result] = run(prep.initial, prep.sim, sinks);
    trace.snapshots = std::move(snaps);
    write_trace_csv((dir / "trace.csv").string(), trace);
    if (cfg.snapshot_format == SnapshotFormat::bo2d1)
      write_snapshot((dir / "final.bo2d").string(), result.field, result.tau, result.steps, conserved(result.field));

    const ConservationDrift d = conservation_drift(trace);
    std::ostringstream st;
    st << "status = " << to_string(result.status) << "\n"
       << "reason = " << result.reason << "\n"
       << "tau = " << fmt(result.tau) << "\n"
       << "steps = " << result.steps << "\n"
       << "amax = " << fmt(trace.peaks.empty() ? 0.0 : trace.peaks.back().amax) << "\n"
       << "drift_M = " << fmt(d.mass) << "\n"
       << "drift_Px = " << fmt(d.px) << "\n"
       << "drift_H = " << fmt(d.hamiltonian) << "\n"
       << "drift_Py_abs = " << fmt(d.py_abs) << "\n"
       << "H0 = " << fmt(c0.hamiltonian) << "\n";
    {
      std::ofstream f(dir / "status.txt");
      f << st.str();
      if (!f) throw IoError("cannot write status in '" + cfg.output_dir + "'");
    }
    log << st.str();
    if (result.status == RunStatus::under_resolved) {
      log << "run aborted: " << result.reason << "\n";
      return static_cast<int>(kRuntimeAbort);
    }
    return static_cast<int>(kOk);
  });
}

int cmd_fit(const FitArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    const CollapseTrace trace = read_trace_csv(args.trace);
    WindowPolicy policy;
    policy.explicit_window = args.window;
    SelfSimFit fit;
    try {
      fit = fit_exponent(trace, policy);
    } catch (const FitError& e) {
      log << "fit rejected: " << e.what() << "\n";
      return static_cast<int>(kRuntimeAbort);
    }
    const fs::path dir = args.out ? fs::path(*args.out) : fs::path(args.trace).parent_path();
    if (!dir.empty()) ensure_dir(dir.string());

    log << "lambda = " << fmt(fit.lambda) << " +- " << fmt(fit.ci95) << "\n"
        << "tau_c = " << fmt(fit.tau_c) << " +- " << fmt(fit.tau_c_ci95) << "\n"
        << "window = " << fmt(fit.tau_lo) << ":" << fmt(fit.tau_hi) << " (" << fit.points << " points)\n"
        << "rms_residual = " << fmt(fit.rms_residual) << "\n"
        << "lambda - 1/2 = " << fmt(fit.lambda - kCompleteBalanceLambda) << "\n";
    {
      std::ofstream f(dir / "fit.csv");
      f << "lambda,ci95,tau_c,tau_c_ci95,prefactor,tau_lo,tau_hi,rms_residual,points\n"
        << fmt(fit.lambda) << ',' << fmt(fit.ci95) << ',' << fmt(fit.tau_c) << ',' << fmt(fit.tau_c_ci95) << ','
        << fmt(fit.prefactor) << ',' << fmt(fit.tau_lo) << ',' << fmt(fit.tau_hi) << ',' << fmt(fit.rms_residual)
        << ',' << fit.points << "\n";
      if (!f) throw IoError("cannot write fit.csv");
    }
    std::vector<double> tc, am, fl;
    for (const auto& p : trace.peaks) {
      if (p.tau < fit.tau_lo || p.tau > fit.tau_hi) continue;
      const double t = fit.tau_c - p.tau;
      tc.push_back(t);
      am.push_back(p.amax);
      fl.push_back(fit.prefactor * std::pow(t, -fit.lambda));
    }
    write_columns((dir / "loglog_data.dat").string(), "tau_c - tau, A_max", {tc, am});
    write_columns((dir / "loglog_fit.dat").string(), "tau_c - tau, C (tau_c - tau)^-lambda", {tc, fl});

    // Snapshots next to the trace give the rescaled sections.
    std::vector<SnapshotFile> files;
    const fs::path tdir = fs::path(args.trace).parent_path().empty() ? fs::path(".") : fs::path(args.trace).parent_path();
    std::vector<fs::path> paths;
    for (const auto& e : fs::directory_iterator(tdir))
      if (e.path().extension() == ".bo2d" && e.path().filename().string().rfind("snap_", 0) == 0) paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths) {
      SnapshotFile s = read_snapshot(p.string());
      if (s.tau >= fit.tau_lo && s.tau <= fit.tau_hi) files.push_back(std::move(s));
    }
    if (!files.empty()) {
      std::vector<SpectralField2D> fields;
      fields.reserve(files.size());
      for (const auto& s : files) fields.push_back(s.field());
      std::vector<Snapshot> snaps;
      for (std::size_t i = 0; i < files.size(); ++i) snaps.push_back({files[i].tau, &fields[i]});
      const auto profiles = rescale_snapshots(snaps, fit);
      for (std::size_t i = 0; i < profiles.size(); ++i) {
        char name[40];
        std::snprintf(name, sizeof name, "profile_%03zu.dat", i);
        const auto& p = profiles[i];
        write_columns((dir / name).string(), "xi, h along x, h along y  (tau = " + fmt(p.tau) + ")", {p.xi1, p.h1, p.h2});
        log << "profile tau = " << fmt(p.tau) << "  section mismatch = " << fmt(section_mismatch(p)) << "\n";
      }
      if (profiles.size() >= 2) log << "collapse_quality = " << fmt(collapse_quality(profiles)) << "\n";
    }
    return static_cast<int>(kOk);
  });
}

int cmd_groundstate(const GroundStateArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    if (!(args.vstar > 0.0)) throw DomainError("vstar must be positive");
    const RadialGridPtr grid = args.rmax ? RadialGrid::with_rmax(args.nodes, *args.rmax)
                                         : default_ground_state_grid(args.vstar, args.nodes);
    GroundState gs;
    try {
      gs = solve_ground_state(args.vstar, grid);
    } catch (const ConvergenceError& e) {
      log << "no convergence: " << e.what() << "\n";
      return static_cast<int>(kRuntimeAbort);
    }
    ensure_dir(args.out);
    const fs::path dir(args.out);
    const BoFit fit = bo_fit(gs.profile);
    std::vector<double> r(grid->r().begin(), grid->r().end()), lor(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) lor[i] = 4.0 * fit.a0 / (1.0 + fit.a0 * fit.a0 * r[i] * r[i]);
    write_columns((dir / "groundstate.csv").string(), "r, h, 4 a0 / (1 + a0^2 r^2)", {r, gs.profile.h, lor});
    std::vector<double> it, res;
    for (std::size_t i = 0; i < gs.residual_history.size(); ++i) {
      it.push_back(static_cast<double>(i + 1));
      res.push_back(gs.residual_history[i]);
    }
    write_columns((dir / "groundstate_residual.dat").string(), "iteration, residual", {it, res});
    std::ostringstream st;
    st << "vstar = " << fmt(gs.vstar) << "\n"
       << "nodes = " << grid->size() << "\n"
       << "r_max = " << fmt(grid->r_max()) << "\n"
       << "iterations = " << gs.iterations << "\n"
       << "residual = " << fmt(gs.residual) << "\n"
       << "h0 = " << fmt(gs.profile.h.front()) << "\n"
       << "decay_exponent = " << fmt(gs.profile.decay_exponent) << "\n"
       << "ground_mode = " << (gs.ground_mode ? "true" : "false") << "\n"
       << "a0 = " << fmt(fit.a0) << "\n"
       << "a0_ci95 = " << fmt(fit.ci95) << "\n"
       << "lorentzian_misfit = " << fmt(fit.misfit) << "\n";
    {
      std::ofstream f(dir / "groundstate_fit.txt");
      f << st.str();
      if (!f) throw IoError("cannot write groundstate_fit.txt");
    }
    log << st.str();
    return static_cast<int>(kOk);
  });
}

int cmd_check(const std::string& suite, std::ostream& log) {
  return guarded(log, [&] {
    const auto results = run_checks(suite);
    int failed = 0;
    for (const auto& r : results) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%-30s %s  measured %.3e  tol %.1e", r.name.c_str(), r.passed ? "PASS" : "FAIL",
                    r.measured, r.tolerance);
      log << buf << (r.detail.empty() ? "" : "  (" + r.detail + ")") << "\n";
      failed += r.passed ? 0 : 1;
    }
    if (failed) {
      log << failed << " check(s) failed:";
      for (const auto& r : results)
        if (!r.passed) log << " " << r.name;
      log << "\n";
      return static_cast<int>(kCheckFailed);
    }
    log << "all " << results.size() << " checks passed\n";
    return static_cast<int>(kOk);
  });
}

}  // namespace bo2d::cli
