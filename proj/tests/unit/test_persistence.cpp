#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "bo2d/error.hpp"
#include "bo2d/persistence.hpp"
#include "bo2d/run_config.hpp"

using namespace bo2d;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bo2d_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

const char* kConfig = R"([grid]
nx = 64
ny = 32
lx = 16pi
ly = 8*pi

[ic]
a = 0.5412   # scaled amplitude
sigma_x = 6.25
sigma_y = 12.5

[sim]
t_end = 3
tail_frac = 1e-3

[output]
dir = out/x
)";

}  // namespace

TEST(Snapshot, BitExactRoundTrip) {
  const auto dir = scratch("snap");
  auto g = make_grid(64, 32, 12.5, 3.25);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  SpectralField2D a(g);
  for (auto& v : a.real_mut()) v = u(rng);
  a.real_mut()[5] = 1e-310;  // subnormal
  a.real_mut()[6] = -0.0;
  ConservedSet cs;
  cs.mass = 1.0 / 3.0;
  cs.px = std::nextafter(2.0, 3.0);
  cs.hamiltonian = -1e-300;
  const std::string path = (dir / "a.bo2d").string();
  write_snapshot(path, a, 0.1 + 0.2, 17, cs);
  const SnapshotFile s = read_snapshot(path);
  EXPECT_EQ(s.tau, 0.1 + 0.2);
  EXPECT_EQ(s.step, 17u);
  EXPECT_EQ(s.grid->nx(), 64u);
  EXPECT_EQ(s.grid->ly(), 3.25);
  ASSERT_EQ(s.values.size(), a.real().size());
  EXPECT_EQ(std::memcmp(s.values.data(), a.real().data(), s.values.size() * sizeof(double)), 0);
  ASSERT_TRUE(s.has_sidecar);
  EXPECT_EQ(s.conserved.mass, cs.mass);
  EXPECT_EQ(s.conserved.px, cs.px);
  EXPECT_EQ(s.conserved.hamiltonian, cs.hamiltonian);
  // Header bytes are fixed little-endian.
  std::ifstream f(path, std::ios::binary);
  char head[21];
  f.read(head, 21);
  EXPECT_EQ(std::string(head, 5), "BO2D1");
  EXPECT_EQ(head[5], 1);
  EXPECT_EQ(head[9], 8);
  EXPECT_EQ(head[13], 64);
}

TEST(Snapshot, MalformedFiles) {
  const auto dir = scratch("snapbad");
  auto g = make_grid(16, 16, 1, 1);
  const std::string path = (dir / "a.bo2d").string();
  write_snapshot(path, SpectralField2D(g), 0.0, 0, {});
  const auto size = fs::file_size(path);
  fs::resize_file(path, size - 8);
  EXPECT_THROW(read_snapshot(path), ParseError);
  {
    std::ofstream f(path, std::ios::binary);
    f << "BO2D2garbage";
  }
  EXPECT_THROW(read_snapshot(path), ParseError);
  EXPECT_THROW(read_snapshot((dir / "missing.bo2d").string()), IoError);
  EXPECT_THROW(write_snapshot((dir / "no/such/dir/x.bo2d").string(), SpectralField2D(g), 0.0, 0, {}), IoError);
}

TEST(TraceCsv, RoundTripSeventeenDigits) {
  CollapseTrace t;
  ConservedSet cs;
  for (int i = 0; i < 5; ++i) {
    const double tau = 0.1 * i;
    t.push({tau, 1.0 / (3.0 + i), std::sqrt(2.0) * i, -1e-17 * i, 2.0 - 0.1 * i});
    cs.mass = std::exp(1.0) + i;
    cs.px = 1.0 / 7.0;
    cs.py = 0.0;
    cs.hamiltonian = -0.41154376065499054;
    t.conserved_history.emplace_back(tau, cs);
  }
  std::stringstream ss;
  write_trace_csv(ss, t);
  const std::string text = ss.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "tau,amax,xm,ym,sigma_ratio,M,Px,Py,H");
  const CollapseTrace back = read_trace_csv(ss);
  ASSERT_EQ(back.peaks.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(back.peaks[i].amax, t.peaks[i].amax);
    EXPECT_EQ(back.peaks[i].xm, t.peaks[i].xm);
    EXPECT_EQ(back.conserved_history[i].second.mass, t.conserved_history[i].second.mass);
  }
  std::stringstream again;
  write_trace_csv(again, back);
  EXPECT_EQ(again.str(), text);
}

TEST(TraceCsv, Malformed) {
  std::stringstream bad_header("tau,amax\n0,1\n");
  EXPECT_THROW(read_trace_csv(bad_header), ParseError);
  std::stringstream bad_cell("tau,amax,xm,ym,sigma_ratio,M,Px,Py,H\n0,1,0,0,1,x,0,0,0\n");
  EXPECT_THROW(read_trace_csv(bad_cell), ParseError);
  std::stringstream short_row("tau,amax,xm,ym,sigma_ratio,M,Px,Py,H\n0,1,0\n");
  EXPECT_THROW(read_trace_csv(short_row), ParseError);
  std::stringstream back("tau,amax,xm,ym,sigma_ratio,M,Px,Py,H\n1,1,0,0,1,0,0,0,0\n0,1,0,0,1,0,0,0,0\n");
  EXPECT_THROW(read_trace_csv(back), ParseError);
}

TEST(RunConfigText, ParseSerializeParse) {
  const RunConfig c = parse_run_config_text(kConfig);
  EXPECT_EQ(c.nx, 64u);
  EXPECT_NEAR(c.lx, 16 * M_PI, 1e-12);
  EXPECT_NEAR(c.ly, 8 * M_PI, 1e-12);
  EXPECT_EQ(c.tail_frac, 1e-3);
  EXPECT_EQ(c.output_dir, "out/x");
  EXPECT_FALSE(c.dt.has_value());
  const RunConfig back = parse_run_config_text(serialize_run_config(c));
  EXPECT_TRUE(back == c);
  EXPECT_EQ(serialize_run_config(back), serialize_run_config(c));
}

TEST(RunConfigText, ErrorsCarryLineNumbers) {
  const std::string base(kConfig);
  auto expect_line = [](const std::string& text, const std::string& needle) {
    try {
      parse_run_config_text(text);
      FAIL() << "no error for: " << needle;
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  expect_line(base + "bogus = 1\n", "line 18");
  expect_line("[grid]\nnx = sixty\n", "line 2");
  expect_line("[nope]\n", "line 1");
  expect_line("nx = 8\n", "line 1");
  EXPECT_THROW(parse_run_config_text("[grid]\nnx = 64\n"), ParseError);
  std::string odd = base;
  odd.replace(odd.find("nx = 64"), 7, "nx = 63");
  EXPECT_THROW(parse_run_config_text(odd), ParseError);
}

TEST(RunConfigText, PreparedRunUsesOverrides) {
  RunConfig c = parse_run_config_text(kConfig);
  c.dt = 0.01;
  c.snapshot_every = 4;
  const PreparedRun p = prepare_run(c);
  EXPECT_EQ(p.sim.dt, 0.01);
  EXPECT_EQ(p.sim.tail_frac, 1e-3);
  EXPECT_EQ(p.sim.snapshot_every, 4u);
  // The 8 pi box is narrower than the pulse, so overlapping images raise the sampled peak.
  EXPECT_TRUE(p.image_overlap_warning);
  EXPECT_GT(p.initial.max_abs(), 0.5412);
  EXPECT_EQ(p.sim.blowup_amp, 50 * p.initial.max_abs());
}

TEST(RunConfigText, NoiseIsSeededAndReproducible) {
  RunConfig c = parse_run_config_text(kConfig);
  c.noise = 1e-3;
  c.seed = 42;
  const PreparedRun a = prepare_run(c), b = prepare_run(c);
  for (std::size_t n = 0; n < a.initial.real().size(); ++n) ASSERT_EQ(a.initial.real()[n], b.initial.real()[n]);
  c.seed = 43;
  const PreparedRun d = prepare_run(c);
  EXPECT_NE(a.initial.real()[0], d.initial.real()[0]);
}
