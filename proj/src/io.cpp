#include "wnv/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace wnv {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Roughly n round-valued ticks covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int n = 5) {
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  const double raw = span / n;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  const double step = (r < 1.5 ? 1.0 : r < 3.0 ? 2.0 : r < 7.0 ? 5.0 : 10.0) * mag;
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step)
    out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  return out;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void close_checked(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string svg_open(double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n<rect x=\"0\" y=\"0\" width=\"" +
         num(w) + "\" height=\"" + num(h) + "\" fill=\"white\"/>\n";
}

std::string text_at(double x, double y, const std::string& s, const std::string& anchor,
                    int size = 12, const std::string& extra = "") {
  return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"" +
         std::to_string(size) + "\" text-anchor=\"" + anchor + "\"" + extra + ">" + escape(s) +
         "</text>\n";
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string snapshot_name(double t) { return "snapshot_" + format_double(t) + ".csv"; }

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  close_checked(out, path);
}

std::vector<fs::path> write_trajectory_csv(const Trajectory& traj, const fs::path& dir) {
  fs::create_directories(dir);
  std::vector<fs::path> written;

  const fs::path bpath = dir / "boundaries.csv";
  {
    auto out = open_out(bpath);
    out << "t,g,h,gdot,hdot,supU,supV\n";
    for (const auto& r : traj.summaries)
      out << format_double(r.t) << ',' << format_double(r.g) << ',' << format_double(r.h) << ','
          << format_double(r.gdot) << ',' << format_double(r.hdot) << ','
          << format_double(r.sup_u) << ',' << format_double(r.sup_v) << '\n';
    close_checked(out, bpath);
  }
  written.push_back(bpath);

  for (const auto& s : traj.snapshots) {
    const fs::path p = dir / snapshot_name(s.t);
    auto out = open_out(p);
    out << "x,y,U,V\n";
    for (int j = 0; j <= s.cells(); ++j) {
      const double y = s.y(j);
      const double x = y_to_x(s.geom, y);
      out << format_double(x) << ',' << format_double(y) << ',' << format_double(s.m[j]) << ','
          << format_double(s.n[j]) << '\n';
    }
    close_checked(out, p);
    written.push_back(p);
  }
  return written;
}

std::vector<double> CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::out_of_range("no column '" + name + "'");
  const auto k = static_cast<std::size_t>(it - header.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.at(k));
  return out;
}

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) return t;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  int no = 1;
  while (std::getline(in, line)) {
    ++no;
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p <= end) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(p, end, v);
      if (ec != std::errc())
        throw std::runtime_error(path.string() + ":" + std::to_string(no) + ": bad number");
      row.push_back(v);
      if (ptr == end) break;
      if (*ptr != ',')
        throw std::runtime_error(path.string() + ":" + std::to_string(no) + ": expected ','");
      p = ptr + 1;
    }
    if (row.size() != t.header.size())
      throw std::runtime_error(path.string() + ":" + std::to_string(no) + ": column count");
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_probe_csv(const Trajectory& traj, const fs::path& path) {
  auto out = open_out(path);
  out << "t";
  for (double x : traj.probe_points) out << ",U@" << format_double(x) << ",V@" << format_double(x);
  out << '\n';
  for (const auto& row : traj.probes) {
    out << format_double(row.t);
    for (std::size_t k = 0; k < row.u.size(); ++k)
      out << ',' << format_double(row.u[k]) << ',' << format_double(row.v[k]);
    out << '\n';
  }
  close_checked(out, path);
}

void write_sweep_csv(const std::vector<SweepEntry>& sweep, const fs::path& path) {
  auto out = open_out(path);
  out << "L,lambda,ci_low,ci_high,converged,violation\n";
  for (const auto& e : sweep)
    out << format_double(e.L) << ',' << format_double(e.estimate.lambda) << ','
        << format_double(e.estimate.ci_low) << ',' << format_double(e.estimate.ci_high) << ','
        << (e.estimate.converged ? 1 : 0) << ',' << (e.monotonicity_violation ? 1 : 0) << '\n';
  close_checked(out, path);
}

void write_lstar_csv(const LStarResult& result, const fs::path& path) {
  auto out = open_out(path);
  out << "L,lambda,worst_shift,ci_width,converged\n";
  for (const auto& p : result.transcript)
    out << format_double(p.L) << ',' << format_double(p.lambda) << ','
        << format_double(p.worst_shift) << ',' << format_double(p.ci_width) << ','
        << (p.converged ? 1 : 0) << '\n';
  close_checked(out, path);
}

void write_mustar_csv(const MuStarResult& result, const fs::path& path) {
  auto out = open_out(path);
  out << "mu,verdict,t_end,final_width\n";
  for (const auto& p : result.transcript)
    out << format_double(p.mu) << ',' << to_string(p.verdict) << ',' << format_double(p.t_end)
        << ',' << format_double(p.final_width) << '\n';
  close_checked(out, path);
}

void write_convergence_csv(const std::vector<ConvergenceStudy>& studies, const fs::path& path) {
  auto out = open_out(path);
  out << "study,J,dt,error,order\n";
  for (const auto& s : studies)
    for (const auto& r : s.rows)
      out << '"' << s.label << "\"," << r.J << ',' << format_double(r.dt) << ','
          << format_double(r.error) << ',' << format_double(r.order) << '\n';
  close_checked(out, path);
}

std::string render_line_chart(const LineChart& chart) {
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  // Log axis floor: 1e-12 below the largest value or the smallest positive one.
  double y_pos_min = std::numeric_limits<double>::infinity();
  std::size_t points = 0;
  for (const auto& s : chart.series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("series x/y length mismatch");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      ++points;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
      if (s.y[i] > 0.0) y_pos_min = std::min(y_pos_min, s.y[i]);
    }
  }
  if (points == 0) throw std::invalid_argument("line chart: no data");

  std::function<double(double)> ty = [](double y) { return y; };
  if (chart.log_y) {
    if (!std::isfinite(y_pos_min)) throw std::invalid_argument("line chart: log axis without positive data");
    const double floor_v = std::max(y_pos_min, y_hi * 1e-12);
    ty = [floor_v](double y) { return std::log10(std::max(y, floor_v)); };
    y_lo = ty(y_lo > 0.0 ? y_lo : floor_v);
    y_hi = ty(y_hi);
  }
  if (x_hi == x_lo) { x_lo -= 0.5; x_hi += 0.5; }
  if (y_hi == y_lo) { y_lo -= 0.5; y_hi += 0.5; }
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - (y - y_lo) / (y_hi - y_lo)) * ph; };

  std::string svg = svg_open(kWidth, kHeight);
  svg += text_at(kWidth / 2, 24, chart.title, "middle", 15);
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : nice_ticks(x_lo, x_hi)) {
    svg += "<line x1=\"" + num(px(t)) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(px(t)) +
           "\" y2=\"" + num(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
    svg += text_at(px(t), kTop + ph + 18, tick_label(t), "middle", 11);
  }
  for (double t : nice_ticks(y_lo, y_hi)) {
    const std::string label = chart.log_y ? "1e" + tick_label(t) : tick_label(t);
    svg += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(py(t)) + "\" x2=\"" + num(kLeft) +
           "\" y2=\"" + num(py(t)) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(py(t)) + "\" x2=\"" + num(kLeft + pw) +
           "\" y2=\"" + num(py(t)) + "\" stroke=\"#dddddd\"/>\n";
    svg += text_at(kLeft - 8, py(t) + 4, label, "end", 11);
  }
  svg += text_at(kLeft + pw / 2, kHeight - 15, chart.x_label, "middle");
  svg += text_at(20, kTop + ph / 2, chart.y_label, "middle", 12,
                 " transform=\"rotate(-90 20 " + num(kTop + ph / 2) + ")\"");

  double legend_y = kTop + 10;
  for (const auto& s : chart.series) {
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      pts += num(px(s.x[i])) + "," + num(py(ty(s.y[i]))) + " ";
    }
    if (!pts.empty()) pts.pop_back();
    svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"" +
           pts + "\"/>\n";
    const double lx = kWidth - kRight + 15;
    svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(legend_y) + "\" x2=\"" + num(lx + 20) +
           "\" y2=\"" + num(legend_y) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"/>\n";
    svg += text_at(lx + 26, legend_y + 4, s.name, "start", 11);
    legend_y += 18;
  }
  svg += "</svg>\n";
  return svg;
}

void write_front_plot(const Trajectory& traj, const fs::path& path) {
  if (traj.summaries.empty()) throw std::invalid_argument("front plot: empty trajectory");
  Series h{"h(t)", {}, {}, "#d62728"};
  Series g{"g(t)", {}, {}, "#1f77b4"};
  for (const auto& r : traj.summaries) {
    h.x.push_back(r.t);
    h.y.push_back(r.h);
    g.x.push_back(r.t);
    g.y.push_back(r.g);
  }
  write_text(path, render_line_chart({"Front positions", "t", "x", {h, g}, false}));
}

void write_norm_plot(const Trajectory& traj, const fs::path& path, bool log_y) {
  if (traj.summaries.empty()) throw std::invalid_argument("norm plot: empty trajectory");
  Series u{"sup U", {}, {}, "#2ca02c"};
  Series v{"sup V", {}, {}, "#9467bd"};
  for (const auto& r : traj.summaries) {
    u.x.push_back(r.t);
    u.y.push_back(r.sup_u);
    v.x.push_back(r.t);
    v.y.push_back(r.sup_v);
  }
  const bool any_positive = std::any_of(traj.summaries.begin(), traj.summaries.end(),
                                        [](const SummaryRow& r) { return r.sup_u > 0 || r.sup_v > 0; });
  write_text(path, render_line_chart({"Sup norms", "t", "sup", {u, v}, log_y && any_positive}));
}

void write_sweep_plot(const std::vector<SweepEntry>& sweep, const fs::path& path) {
  if (sweep.empty()) throw std::invalid_argument("sweep plot: empty sweep");
  Series s{"lambda(L)", {}, {}, "#d62728"};
  Series lo{"CI low", {}, {}, "#aaaaaa"};
  Series hi{"CI high", {}, {}, "#aaaaaa"};
  Series zero{"0", {sweep.front().L, sweep.back().L}, {0.0, 0.0}, "#000000"};
  for (const auto& e : sweep) {
    s.x.push_back(e.L);
    s.y.push_back(e.estimate.lambda);
    lo.x.push_back(e.L);
    lo.y.push_back(e.estimate.ci_low);
    hi.x.push_back(e.L);
    hi.y.push_back(e.estimate.ci_high);
  }
  write_text(path, render_line_chart({"Principal Lyapunov exponent", "L", "lambda",
                                      {s, lo, hi, zero}, false}));
}

std::vector<std::vector<double>> downsample(const std::vector<std::vector<double>>& grid,
                                            int max_rows, int max_cols) {
  if (grid.empty() || grid.front().empty()) return {};
  const std::size_t R = grid.size();
  const std::size_t C = grid.front().size();
  const std::size_t r_out = std::min<std::size_t>(R, static_cast<std::size_t>(max_rows));
  const std::size_t c_out = std::min<std::size_t>(C, static_cast<std::size_t>(max_cols));
  std::vector<std::vector<double>> out(r_out, std::vector<double>(c_out, 0.0));
  for (std::size_t i = 0; i < r_out; ++i) {
    const std::size_t r0 = i * R / r_out, r1 = (i + 1) * R / r_out;
    for (std::size_t k = 0; k < c_out; ++k) {
      const std::size_t c0 = k * C / c_out, c1 = (k + 1) * C / c_out;
      double acc = 0.0;
      for (std::size_t r = r0; r < r1; ++r)
        for (std::size_t c = c0; c < c1; ++c) acc += grid[r][c];
      out[i][k] = acc / static_cast<double>((r1 - r0) * (c1 - c0));
    }
  }
  return out;
}

void write_heatmap(const Trajectory& traj, const fs::path& path, int max_cells) {
  if (traj.snapshots.empty()) throw std::invalid_argument("heatmap: no snapshots");
  if (max_cells < 1) throw std::invalid_argument("heatmap: max_cells must be positive");
  double x_lo = 0.0, x_hi = 0.0;
  for (const auto& s : traj.snapshots) {
    x_lo = std::min(x_lo, s.geom.g);
    x_hi = std::max(x_hi, s.geom.h);
  }
  // Sample twice as finely as the output raster so that averaging has data.
  const int nx = 2 * max_cells;
  std::vector<std::vector<double>> raw;
  raw.reserve(traj.snapshots.size());
  for (const auto& s : traj.snapshots) {
    std::vector<double> row(nx);
    for (int k = 0; k < nx; ++k) {
      const double x = x_lo + (x_hi - x_lo) * (k + 0.5) / nx;
      row[k] = sample_at_x(s, x).first;
    }
    raw.push_back(std::move(row));
  }
  const auto grid = downsample(raw, max_cells, max_cells);
  double peak = 0.0;
  for (const auto& r : grid)
    for (double v : r) peak = std::max(peak, v);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const double cw = pw / grid.front().size();
  const double ch = ph / grid.size();
  const double t0 = traj.snapshots.front().t;
  const double t1 = traj.snapshots.back().t;

  std::string svg = svg_open(kWidth, kHeight);
  svg += text_at(kWidth / 2, 24, "U(x, t)", "middle", 15);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    // Time runs upward.
    const double y = kTop + ph - (i + 1) * ch;
    for (std::size_t k = 0; k < grid[i].size(); ++k) {
      const double w = peak > 0.0 ? grid[i][k] / peak : 0.0;
      if (w <= 0.0) continue;
      const int r = 255;
      const int g = static_cast<int>(std::lround(255.0 * (1.0 - w)));
      const int b = static_cast<int>(std::lround(255.0 * (1.0 - w)));
      svg += "<rect x=\"" + num(kLeft + k * cw) + "\" y=\"" + num(y) + "\" width=\"" +
             num(cw + 0.05) + "\" height=\"" + num(ch + 0.05) + "\" fill=\"rgb(" +
             std::to_string(r) + "," + std::to_string(g) + "," + std::to_string(b) + ")\"/>\n";
    }
  }
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : nice_ticks(x_lo, x_hi)) {
    const double px = kLeft + (t - x_lo) / (x_hi - x_lo) * pw;
    svg += text_at(px, kTop + ph + 18, tick_label(t), "middle", 11);
  }
  if (t1 > t0) {
    for (double t : nice_ticks(t0, t1)) {
      const double py = kTop + ph - (t - t0) / (t1 - t0) * ph;
      svg += text_at(kLeft - 8, py + 4, tick_label(t), "end", 11);
    }
  }
  svg += text_at(kLeft + pw / 2, kHeight - 15, "x", "middle");
  svg += text_at(20, kTop + ph / 2, "t", "middle");
  svg += text_at(kWidth - kRight + 15, kTop + 14, "max U = " + tick_label(peak), "start", 11);
  svg += "</svg>\n";
  write_text(path, svg);
}

bool svg_well_formed(const std::string& text) {
  std::vector<std::string> stack;
  std::size_t pos = 0;
  bool root_seen = false;
  while ((pos = text.find('<', pos)) != std::string::npos) {
    const auto close = text.find('>', pos);
    if (close == std::string::npos) return false;
    const std::string tag = text.substr(pos + 1, close - pos - 1);
    pos = close + 1;
    if (tag.empty()) return false;
    if (tag.front() == '?' || tag.front() == '!') continue;
    if (tag.front() == '/') {
      const std::string name = tag.substr(1, tag.find_first_of(" \t\n", 1) - 1);
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
      continue;
    }
    const std::string name = tag.substr(0, tag.find_first_of(" \t\n/"));
    if (name.empty()) return false;
    if (stack.empty()) {
      if (root_seen) return false;
      root_seen = true;
    }
    if (tag.back() != '/') stack.push_back(name);
  }
  return root_seen && stack.empty();
}

}  // namespace wnv
