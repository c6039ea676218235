#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wnv/lyapunov.hpp"
#include "wnv/solver.hpp"
#include "wnv/thresholds.hpp"
#include "wnv/verify.hpp"

namespace wnv {

namespace fs = std::filesystem;

/// Shortest text that parses back to the same double.
std::string format_double(double v);

/// Snapshot file name for time t: snapshot_<t>.csv.
std::string snapshot_name(double t);

/// boundaries.csv (t,g,h,gdot,hdot,supU,supV) plus one snapshot_<t>.csv
/// (x,y,U,V) per stored snapshot. Returns the written paths.
std::vector<fs::path> write_trajectory_csv(const Trajectory& traj, const fs::path& dir);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::vector<double> column(const std::string& name) const;
};

/// Reads a numeric CSV written by this library.
CsvTable read_csv(const fs::path& path);

void write_probe_csv(const Trajectory& traj, const fs::path& path);
void write_sweep_csv(const std::vector<SweepEntry>& sweep, const fs::path& path);
void write_lstar_csv(const LStarResult& result, const fs::path& path);
void write_mustar_csv(const MuStarResult& result, const fs::path& path);
void write_convergence_csv(const std::vector<ConvergenceStudy>& studies, const fs::path& path);

/// Writes text with LF line endings; throws std::runtime_error naming the path.
void write_text(const fs::path& path, const std::string& text);

// SVG output. Every writer throws std::invalid_argument on empty input and
// leaves no file behind in that case.

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  bool log_y = false;
};

std::string render_line_chart(const LineChart& chart);

void write_front_plot(const Trajectory& traj, const fs::path& path);
void write_norm_plot(const Trajectory& traj, const fs::path& path, bool log_y = true);
void write_sweep_plot(const std::vector<SweepEntry>& sweep, const fs::path& path);

/// Space-time raster of U over the stored snapshots, at most max_cells per
/// axis; finer data is block-averaged.
void write_heatmap(const Trajectory& traj, const fs::path& path, int max_cells = 300);

/// Average-pools a rows x cols matrix (row-major) into at most max_rows x max_cols.
std::vector<std::vector<double>> downsample(const std::vector<std::vector<double>>& grid,
                                            int max_rows, int max_cols);

/// True when every start tag has a matching end tag (self-closing tags allowed).
bool svg_well_formed(const std::string& text);

}  // namespace wnv
