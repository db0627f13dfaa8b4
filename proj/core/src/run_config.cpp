#include "bo2d/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "bo2d/error.hpp"
#include "bo2d/spectral_ops.hpp"

namespace bo2d {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class LineError {
 public:
  explicit LineError(std::size_t line) : line_(line) {}
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("config line " + std::to_string(line_) + ": " + msg);
  }

 private:
  std::size_t line_;
};

double to_double(const std::string& v, const LineError& le) {
  std::string s = v;
  double factor = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    s = trim(s.substr(0, s.size() - 2));
    if (!s.empty() && s.back() == '*') s = trim(s.substr(0, s.size() - 1));
    if (s.empty()) return factor;
  }
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(s, &pos);
  } catch (const std::exception&) {
    le.fail("not a number: '" + v + "'");
  }
  if (pos != s.size()) le.fail("trailing characters in number: '" + v + "'");
  return d * factor;
}

std::uint64_t to_uint(const std::string& v, const LineError& le) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) le.fail("not a non-negative integer: '" + v + "'");
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    le.fail("integer out of range: '" + v + "'");
  }
}

bool to_bool(const std::string& v, const LineError& le) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  le.fail("not a boolean: '" + v + "'");
}

}  // namespace

void RunConfig::validate() const {
  if (nx < 8 || ny < 8 || nx % 2 || ny % 2) throw DomainError("config: nx, ny must be even and at least 8");
  if (!(lx > 0.0) || !(ly > 0.0)) throw DomainError("config: lx, ly must be positive");
  if (dt && !(*dt > 0.0)) throw DomainError("config: dt must be positive");
  if (!(t_end >= 0.0)) throw DomainError("config: t_end must be non-negative");
  if (blowup_amp && !(*blowup_amp > 0.0)) throw DomainError("config: blowup_amp must be positive");
  if (!(blowup_factor > 0.0)) throw DomainError("config: blowup_factor must be positive");
  if (!(tail_frac > 0.0 && tail_frac < 1.0)) throw DomainError("config: tail_frac must lie in (0, 1)");
  if (!(ic.sigma_x > 0.0) || !(ic.sigma_y > 0.0)) throw DomainError("config: sigma_x, sigma_y must be positive");
  if (!(noise >= 0.0)) throw DomainError("config: noise must be non-negative");
  if (noise > 0.0 && !seed) throw DomainError("config: noise needs a seed");
}

RunConfig parse_run_config(std::istream& in) {
  RunConfig c;
  bool have_a = false, have_sx = false, have_sy = false, have_lx = false, have_ly = false, have_tend = false;
  std::string section;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const LineError le(lineno);
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') le.fail("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "grid" && section != "ic" && section != "sim" && section != "output")
        le.fail("unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) le.fail("expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (section.empty()) le.fail("key outside any section");
    const std::string k = section + "." + key;

    if (k == "grid.nx") c.nx = to_uint(val, le);
    else if (k == "grid.ny") c.ny = to_uint(val, le);
    else if (k == "grid.lx") { c.lx = to_double(val, le); have_lx = true; }
    else if (k == "grid.ly") { c.ly = to_double(val, le); have_ly = true; }
    else if (k == "ic.a") { c.ic.a = to_double(val, le); have_a = true; }
    else if (k == "ic.sigma_x") { c.ic.sigma_x = to_double(val, le); have_sx = true; }
    else if (k == "ic.sigma_y") { c.ic.sigma_y = to_double(val, le); have_sy = true; }
    else if (k == "ic.x0") c.ic.x0 = to_double(val, le);
    else if (k == "ic.y0") c.ic.y0 = to_double(val, le);
    else if (k == "ic.noise") c.noise = to_double(val, le);
    else if (k == "ic.seed") c.seed = to_uint(val, le);
    else if (k == "sim.dt") c.dt = to_double(val, le);
    else if (k == "sim.t_end") { c.t_end = to_double(val, le); have_tend = true; }
    else if (k == "sim.blowup_amp") c.blowup_amp = to_double(val, le);
    else if (k == "sim.blowup_factor") c.blowup_factor = to_double(val, le);
    else if (k == "sim.tail_frac") c.tail_frac = to_double(val, le);
    else if (k == "sim.snapshot_every") c.snapshot_every = to_uint(val, le);
    else if (k == "sim.dealias") c.dealias = to_bool(val, le);
    else if (k == "sim.peak_refinement") {
      if (val == "spectral") c.peak_refinement = PeakRefinement::spectral;
      else if (val == "quadratic") c.peak_refinement = PeakRefinement::quadratic;
      else le.fail("peak_refinement must be spectral or quadratic");
    }
    else if (k == "output.dir") c.output_dir = val;
    else if (k == "output.snapshot_format") {
      if (val == "bo2d1") c.snapshot_format = SnapshotFormat::bo2d1;
      else if (val == "none") c.snapshot_format = SnapshotFormat::none;
      else le.fail("snapshot_format must be bo2d1 or none");
    }
    else le.fail("unknown key '" + key + "' in [" + section + "]");
  }
  if (!have_lx || !have_ly) throw ParseError("config: [grid] lx and ly are required");
  if (!have_a || !have_sx || !have_sy) throw ParseError("config: [ic] a, sigma_x and sigma_y are required");
  if (!have_tend) throw ParseError("config: [sim] t_end is required");
  try {
    c.validate();
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  return c;
}

RunConfig parse_run_config_text(const std::string& text) {
  std::istringstream is(text);
  return parse_run_config(is);
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config file '" + path + "'");
  return parse_run_config(f);
}

std::string serialize_run_config(const RunConfig& c) {
  std::ostringstream os;
  os << "[grid]\n";
  os << "nx = " << c.nx << "\n";
  os << "ny = " << c.ny << "\n";
  os << "lx = " << fmt17(c.lx) << "\n";
  os << "ly = " << fmt17(c.ly) << "\n";
  os << "\n[ic]\n";
  os << "a = " << fmt17(c.ic.a) << "\n";
  os << "sigma_x = " << fmt17(c.ic.sigma_x) << "\n";
  os << "sigma_y = " << fmt17(c.ic.sigma_y) << "\n";
  if (c.ic.x0) os << "x0 = " << fmt17(*c.ic.x0) << "\n";
  if (c.ic.y0) os << "y0 = " << fmt17(*c.ic.y0) << "\n";
  if (c.noise != 0.0) os << "noise = " << fmt17(c.noise) << "\n";
  if (c.seed) os << "seed = " << *c.seed << "\n";
  os << "\n[sim]\n";
  if (c.dt) os << "dt = " << fmt17(*c.dt) << "\n";
  os << "t_end = " << fmt17(c.t_end) << "\n";
  if (c.blowup_amp) os << "blowup_amp = " << fmt17(*c.blowup_amp) << "\n";
  os << "blowup_factor = " << fmt17(c.blowup_factor) << "\n";
  os << "tail_frac = " << fmt17(c.tail_frac) << "\n";
  os << "snapshot_every = " << c.snapshot_every << "\n";
  os << "dealias = " << (c.dealias ? "true" : "false") << "\n";
  os << "peak_refinement = " << (c.peak_refinement == PeakRefinement::spectral ? "spectral" : "quadratic") << "\n";
  os << "\n[output]\n";
  os << "dir = " << c.output_dir << "\n";
  os << "snapshot_format = " << (c.snapshot_format == SnapshotFormat::bo2d1 ? "bo2d1" : "none") << "\n";
  return os.str();
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.nx == b.nx && a.ny == b.ny && a.lx == b.lx && a.ly == b.ly && a.ic.a == b.ic.a &&
         a.ic.sigma_x == b.ic.sigma_x && a.ic.sigma_y == b.ic.sigma_y && a.ic.x0 == b.ic.x0 && a.ic.y0 == b.ic.y0 &&
         a.noise == b.noise && a.seed == b.seed && a.dt == b.dt && a.t_end == b.t_end && a.blowup_amp == b.blowup_amp &&
         a.blowup_factor == b.blowup_factor && a.tail_frac == b.tail_frac && a.snapshot_every == b.snapshot_every &&
         a.dealias == b.dealias && a.peak_refinement == b.peak_refinement && a.output_dir == b.output_dir &&
         a.snapshot_format == b.snapshot_format;
}

PreparedRun prepare_run(const RunConfig& cfg) {
  cfg.validate();
  GridPtr grid = make_grid(cfg.nx, cfg.ny, cfg.lx, cfg.ly);
  // a = 0 is the trivial run; the pulse itself must have a nonzero amplitude.
  RealizedIC ic = cfg.ic.a == 0.0 ? RealizedIC{SpectralField2D(grid), false} : realize(cfg.ic, grid);
  if (cfg.noise > 0.0) {
    std::mt19937_64 rng(*cfg.seed);
    auto v = ic.field.real_mut();
    const double amp = cfg.noise * std::abs(cfg.ic.a);
    // Uniform in [-1, 1) from the top 53 bits; independent of the library's distributions.
    for (auto& x : v) x += amp * (2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0);
    ic.field = dealias_23(ic.field);
  }
  SimConfig sim = default_sim_config(ic.field, cfg.t_end);
  if (cfg.dt) sim.dt = *cfg.dt;
  const double a0 = ic.field.max_abs();
  sim.blowup_amp = cfg.blowup_amp ? *cfg.blowup_amp : (a0 > 0.0 ? cfg.blowup_factor * a0 : 1.0);
  sim.tail_frac = cfg.tail_frac;
  sim.snapshot_every = cfg.snapshot_every;
  sim.dealias = cfg.dealias;
  sim.peak_refinement = cfg.peak_refinement;
  return PreparedRun{grid, std::move(ic.field), sim, ic.image_overlap_warning};
}

}  // namespace bo2d
