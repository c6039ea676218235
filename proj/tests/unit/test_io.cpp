#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wnv/io.hpp"

using namespace wnv;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("wnv_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

Trajectory short_run(double h0, double amp_u, double amp_v, double t_end, int snapshots) {
  ModelSpec s = default_paper_spec();
  s.h0 = h0;
  SolverConfig c;
  c.J = 60;
  c.t_end = t_end;
  for (int k = 0; k <= snapshots; ++k) c.output_times.push_back(t_end * k / snapshots);
  c.probe_points = {0.0, 0.5};
  return simulate(s, InitialData::cosine(amp_u, amp_v), c);
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 12345.678, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(2.0) == "2");
  CHECK(snapshot_name(1.5) == "snapshot_1.5.csv");
}

TEST_CASE("trajectory CSV output") {
  const Trajectory tr = short_run(1.0, 0.1, 2.0, 2.0, 4);
  const fs::path dir = scratch("traj");
  const auto files = write_trajectory_csv(tr, dir);
  CHECK(files.size() == 1 + tr.snapshots.size());

  const CsvTable b = read_csv(dir / "boundaries.csv");
  CHECK(b.header == std::vector<std::string>{"t", "g", "h", "gdot", "hdot", "supU", "supV"});
  CHECK(b.rows.size() == tr.accepted_steps() + 1);
  // Shortest round-trip formatting reproduces every value exactly.
  for (std::size_t k = 0; k < b.rows.size(); ++k) {
    CHECK(b.rows[k][0] == tr.summaries[k].t);
    CHECK(b.rows[k][2] == tr.summaries[k].h);
    CHECK(b.rows[k][6] == tr.summaries[k].sup_v);
  }

  const FrontState& last = tr.snapshots.back();
  const CsvTable s = read_csv(dir / snapshot_name(last.t));
  const auto x = s.column("x");
  REQUIRE(x.size() == last.m.size());
  CHECK(x.front() == last.geom.g);
  CHECK(x.back() == last.geom.h);
  CHECK(std::is_sorted(x.begin(), x.end()));
  CHECK(s.column("U").front() == 0.0);
  CHECK_THROWS(s.column("W"));
  fs::remove_all(dir);
}

TEST_CASE("zero data give zero sup columns") {
  const Trajectory tr = short_run(1.0, 0.0, 0.0, 1.0, 1);
  const fs::path dir = scratch("zero");
  write_trajectory_csv(tr, dir);
  const auto sup = read_csv(dir / "boundaries.csv").column("supU");
  CHECK(std::all_of(sup.begin(), sup.end(), [](double v) { return v == 0.0; }));
  fs::remove_all(dir);
}

TEST_CASE("transcripts") {
  const Trajectory tr = short_run(1.0, 0.1, 2.0, 1.0, 1);
  const fs::path dir = scratch("transcripts");
  write_probe_csv(tr, dir / "probes.csv");
  const CsvTable p = read_csv(dir / "probes.csv");
  CHECK(p.rows.size() == tr.probes.size());
  CHECK(p.header.size() == 1 + 2 * tr.probe_points.size());

  MuStarResult mu;
  mu.transcript = {{0.1, Verdict::Vanishing, 300.0, 1.2}, {0.2, Verdict::Spreading, 300.0, 40.0}};
  write_mustar_csv(mu, dir / "mu.csv");
  CHECK(slurp(dir / "mu.csv").find("Spreading") != std::string::npos);
  // A regular file where a directory is expected.
  CHECK_THROWS(write_text(dir / "mu.csv" / "y.txt", "a"));
  fs::remove_all(dir);
}

TEST_CASE("svg output") {
  const fs::path dir = scratch("svg");
  const Trajectory tr = short_run(1.0, 0.1, 2.0, 2.0, 8);
  write_front_plot(tr, dir / "fronts.svg");
  write_norm_plot(tr, dir / "norms.svg");
  write_heatmap(tr, dir / "heat.svg");
  for (const char* name : {"fronts.svg", "norms.svg", "heat.svg"}) {
    CAPTURE(name);
    const std::string text = slurp(dir / name);
    CHECK(text.rfind("<svg", 0) == 0);
    CHECK(svg_well_formed(text));
  }
  CHECK_FALSE(svg_well_formed("<svg><g></svg>"));
  CHECK(svg_well_formed("<svg><rect/></svg>"));

  CHECK_THROWS_AS(write_sweep_plot({}, dir / "sweep.svg"), std::invalid_argument);
  CHECK_FALSE(fs::exists(dir / "sweep.svg"));
  CHECK_THROWS_AS(write_heatmap(Trajectory{}, dir / "empty.svg"), std::invalid_argument);
  CHECK_FALSE(fs::exists(dir / "empty.svg"));
  CHECK_THROWS_AS(render_line_chart(LineChart{}), std::invalid_argument);

  LineChart log_chart;
  log_chart.log_y = true;
  log_chart.series.push_back({"s", {0, 1, 2}, {1e-8, 1e-4, 1.0}});
  CHECK(svg_well_formed(render_line_chart(log_chart)));
  fs::remove_all(dir);
}

TEST_CASE("heatmap resolution is capped") {
  const fs::path dir = scratch("heat");
  const Trajectory tr = short_run(1.0, 0.1, 2.0, 4.0, 400);
  write_heatmap(tr, dir / "heat.svg", 50);
  const std::string text = slurp(dir / "heat.svg");
  const std::size_t cells = count(text, "fill=\"rgb(");
  CHECK(cells > 0);
  CHECK(cells <= 50 * 50);
  fs::remove_all(dir);
}

TEST_CASE("downsample averages blocks") {
  std::vector<std::vector<double>> g(4, std::vector<double>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g[i][j] = 4 * i + j;
  const auto d = downsample(g, 2, 2);
  REQUIRE(d.size() == 2);
  REQUIRE(d[0].size() == 2);
  CHECK(d[0][0] == doctest::Approx(2.5));
  CHECK(d[1][1] == doctest::Approx(12.5));
  CHECK(downsample(g, 10, 10) == g);
  const auto uneven = downsample(std::vector<std::vector<double>>(5, std::vector<double>(7, 1.0)), 2, 3);
  CHECK(uneven.size() <= 2);
  for (const auto& r : uneven)
    for (double v : r) CHECK(v == doctest::Approx(1.0));
}
