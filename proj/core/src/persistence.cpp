#include "bo2d/persistence.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "bo2d/error.hpp"

namespace bo2d {

namespace {

template <class T>
T to_le(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    std::memcpy(&v, b, sizeof(T));
  }
  return v;
}

template <class T>
void put(std::ostream& os, T v) {
  v = to_le(v);
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is, const std::string& path) {
  T v;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) throw ParseError("snapshot '" + path + "': truncated header");
  return to_le(v);
}

void write_sidecar(const std::string& path, double tau, std::size_t step, const ConservedSet& cs) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write '" + path + "'");
  f << "tau = " << format_double(tau) << "\n";
  f << "step = " << step << "\n";
  f << "M = " << format_double(cs.mass) << "\n";
  f << "Px = " << format_double(cs.px) << "\n";
  f << "Py = " << format_double(cs.py) << "\n";
  f << "I1 = " << format_double(cs.i1) << "\n";
  f << "I2 = " << format_double(cs.i2) << "\n";
  f << "H = " << format_double(cs.hamiltonian) << "\n";
  f << "py_well_defined = " << (cs.py_well_defined ? "true" : "false") << "\n";
  if (!f) throw IoError("write failed for '" + path + "'");
}

double parse_number(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ParseError(what + ": not a number '" + s + "'");
  }
  if (pos != s.size()) throw ParseError(what + ": trailing characters in '" + s + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SpectralField2D SnapshotFile::field() const { return SpectralField2D::from_real(grid, values); }

void write_snapshot(const std::string& path, const SpectralField2D& a, double tau, std::size_t step,
                    const ConservedSet& cs) {
  const Grid2D& g = a.grid();
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write '" + path + "'");
  f.write(kSnapshotMagic, sizeof kSnapshotMagic);
  put<std::uint32_t>(f, kSnapshotVersion);
  put<std::uint32_t>(f, 8);
  put<std::uint64_t>(f, g.nx());
  put<std::uint64_t>(f, g.ny());
  put<double>(f, g.lx());
  put<double>(f, g.ly());
  put<double>(f, tau);
  if constexpr (std::endian::native == std::endian::little) {
    const auto v = a.real();
    f.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
  } else {
    for (double v : a.real()) put<double>(f, v);
  }
  f.flush();
  if (!f) throw IoError("write failed for '" + path + "'");
  write_sidecar(path + ".meta", tau, step, cs);
}

SnapshotFile read_snapshot(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open snapshot '" + path + "'");
  char magic[5];
  if (!f.read(magic, 5) || std::memcmp(magic, kSnapshotMagic, 5) != 0)
    throw ParseError("snapshot '" + path + "': bad magic");
  const auto version = get<std::uint32_t>(f, path);
  if (version != kSnapshotVersion) throw ParseError("snapshot '" + path + "': unsupported version");
  if (get<std::uint32_t>(f, path) != 8) throw ParseError("snapshot '" + path + "': unsupported float format");
  const auto nx = get<std::uint64_t>(f, path);
  const auto ny = get<std::uint64_t>(f, path);
  const double lx = get<double>(f, path);
  const double ly = get<double>(f, path);
  SnapshotFile s;
  s.tau = get<double>(f, path);
  if (nx > (1u << 20) || ny > (1u << 20)) throw ParseError("snapshot '" + path + "': implausible dimensions");
  try {
    s.grid = make_grid(nx, ny, lx, ly);
  } catch (const DomainError& e) {
    throw ParseError("snapshot '" + path + "': " + e.what());
  }
  s.values.resize(nx * ny);
  if (!f.read(reinterpret_cast<char*>(s.values.data()), static_cast<std::streamsize>(s.values.size() * sizeof(double))))
    throw ParseError("snapshot '" + path + "': payload shorter than header dimensions");
  for (auto& v : s.values) v = to_le(v);
  f.peek();
  if (!f.eof()) throw ParseError("snapshot '" + path + "': payload longer than header dimensions");

  std::ifstream m(path + ".meta");
  if (m) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(m, line)) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto key = line.substr(0, eq);
      auto val = line.substr(eq + 1);
      key.erase(key.find_last_not_of(" \t") + 1);
      val.erase(0, val.find_first_not_of(" \t"));
      kv[key] = val;
    }
    const std::string what = "sidecar of '" + path + "'";
    auto num = [&](const char* k) {
      const auto it = kv.find(k);
      if (it == kv.end()) throw ParseError(what + ": missing " + k);
      return parse_number(it->second, what);
    };
    s.step = static_cast<std::size_t>(num("step"));
    s.conserved.mass = num("M");
    s.conserved.px = num("Px");
    s.conserved.py = num("Py");
    s.conserved.i1 = num("I1");
    s.conserved.i2 = num("I2");
    s.conserved.hamiltonian = num("H");
    s.conserved.py_well_defined = kv["py_well_defined"] == "true";
    s.has_sidecar = true;
  }
  return s;
}

void write_trace_csv(std::ostream& os, const CollapseTrace& trace) {
  os << kTraceHeader << "\n";
  std::size_t c = 0;
  const auto& hist = trace.conserved_history;
  for (const auto& p : trace.peaks) {
    while (c < hist.size() && hist[c].first < p.tau) ++c;
    const bool have = c < hist.size() && hist[c].first == p.tau;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const ConservedSet cs = have ? hist[c].second : ConservedSet{nan, nan, nan, nan, nan, nan, false};
    os << format_double(p.tau) << ',' << format_double(p.amax) << ',' << format_double(p.xm) << ','
       << format_double(p.ym) << ',' << format_double(p.sigma_ratio) << ',' << format_double(cs.mass) << ','
       << format_double(cs.px) << ',' << format_double(cs.py) << ',' << format_double(cs.hamiltonian) << "\n";
  }
}

void write_trace_csv(const std::string& path, const CollapseTrace& trace) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write '" + path + "'");
  write_trace_csv(f, trace);
  f.flush();
  if (!f) throw IoError("write failed for '" + path + "'");
}

CollapseTrace read_trace_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("trace: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceHeader) throw ParseError("trace: unexpected header '" + line + "'");
  CollapseTrace tr;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    const std::string what = "trace line " + std::to_string(lineno);
    while (std::getline(ss, cell, ',')) v.push_back(parse_number(cell, what));
    if (v.size() != 9) throw ParseError(what + ": expected 9 columns");
    PeakState p{v[0], v[1], v[2], v[3], v[4]};
    try {
      tr.push(p);
    } catch (const DomainError&) {
      throw ParseError(what + ": tau must increase");
    }
    ConservedSet cs;
    cs.mass = v[5];
    cs.px = v[6];
    cs.py = v[7];
    cs.hamiltonian = v[8];
    if (std::isfinite(v[5])) tr.conserved_history.emplace_back(v[0], cs);
  }
  return tr;
}

CollapseTrace read_trace_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open trace '" + path + "'");
  return read_trace_csv(f);
}

void write_columns(const std::string& path, const std::string& header, const std::vector<std::vector<double>>& cols) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write '" + path + "'");
  if (!header.empty()) f << "# " << header << "\n";
  const std::size_t n = cols.empty() ? 0 : cols.front().size();
  for (const auto& c : cols)
    if (c.size() != n) throw DomainError("write_columns: ragged columns");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < cols.size(); ++k) f << (k ? " " : "") << format_double(cols[k][i]);
    f << "\n";
  }
  f.flush();
  if (!f) throw IoError("write failed for '" + path + "'");
}

}  // namespace bo2d
