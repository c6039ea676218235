#include "wnv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace wnv {

namespace {

constexpr double kPi = std::numbers::pi;

FrontGeometry prescribed_geometry(double t) { return {-1.0 - 0.1 * t, 1.0 + 0.1 * t, -0.1, 0.1}; }

FrontGeometry stefan_exact_geometry(double mu, double t) {
  const double w = std::sqrt(4.0 + 4.0 * mu * kPi * (1.0 - std::exp(-t)));
  const double v = mu * kPi * std::exp(-t) / w;
  return {-0.5 * w, 0.5 * w, -v, v};
}

double exact_field(double y, double t) { return std::exp(-t) * std::cos(0.5 * kPi * y); }

void fill_orders(ConvergenceStudy& study, bool by_grid) {
  for (std::size_t k = 1; k < study.rows.size(); ++k) {
    auto& r = study.rows[k];
    const auto& p = study.rows[k - 1];
    const double ratio = by_grid ? static_cast<double>(r.J) / p.J : p.dt / r.dt;
    r.order = std::log(p.error / r.error) / std::log(ratio);
  }
}

}  // namespace

double ConvergenceStudy::min_order() const {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < rows.size(); ++k) lo = std::min(lo, rows[k].order);
  return rows.size() < 2 ? 0.0 : lo;
}

double manufactured_error(const ModelSpec& spec, int J, double dt, double t_final,
                          bool live_stefan) {
  auto exact_geom = [&](double t) {
    return live_stefan ? stefan_exact_geometry(spec.mu, t) : prescribed_geometry(t);
  };

  StepHooks hooks;
  hooks.source = [&](double y, double t) {
    const FrontGeometry geom = exact_geom(t);
    const MetricTerms mt = metric_terms(geom, y);
    const double x = y_to_x(geom, y);
    const double e = std::exp(-t);
    const double c = std::cos(0.5 * kPi * y);
    const double field = e * c;
    const double dfield_dt = -field;
    const double dfield_dy = -0.5 * kPi * e * std::sin(0.5 * kPi * y);
    const double d2field_dy2 = -0.25 * kPi * kPi * field;
    const Reaction f = reaction(spec, x, t, field, field);
    const double transport = mt.b_coef * dfield_dy;
    return std::pair{dfield_dt - spec.D1 * mt.a_coef * d2field_dy2 + transport - f.dU,
                     dfield_dt - spec.D2 * mt.a_coef * d2field_dy2 + transport - f.dV};
  };
  if (!live_stefan) hooks.geometry = prescribed_geometry;
  hooks.check_bounds = false;

  FrontState start;
  start.m.assign(J + 1, 0.0);
  for (int j = 1; j < J; ++j) start.m[j] = exact_field(-1.0 + 2.0 * j / J, 0.0);
  start.n = start.m;
  start.geom = exact_geom(0.0);

  SolverConfig cfg;
  cfg.J = J;
  cfg.dt0 = cfg.dt_min = cfg.dt_max = dt;
  cfg.t_end = t_final;
  cfg.newton_tol = 1e-10;
  cfg.max_newton = 200;
  cfg.output_times = {t_final};
  const Trajectory traj = simulate_from(spec, start, cfg, &hooks);
  if (traj.status != RunStatus::completed || traj.rejected_steps != 0)
    throw std::runtime_error("manufactured run did not complete with a fixed step");

  const FrontState& last = traj.snapshots.back();
  double err = 0.0;
  for (int j = 0; j <= J; ++j) {
    const double ex = exact_field(last.y(j), last.t);
    err = std::max({err, std::abs(last.m[j] - ex), std::abs(last.n[j] - ex)});
  }
  if (live_stefan) {
    const FrontGeometry g = exact_geom(last.t);
    err = std::max({err, std::abs(last.geom.h - g.h), std::abs(last.geom.g - g.g)});
  }
  return err;
}

ConvergenceStudy run_study(const std::string& label, const ModelSpec& spec,
                           const std::vector<std::pair<int, double>>& levels, double t_final,
                           bool by_grid, bool live_stefan) {
  ConvergenceStudy s{label, {}};
  for (const auto& [J, dt] : levels)
    s.rows.push_back({J, dt, manufactured_error(spec, J, dt, t_final, live_stefan), 0.0});
  fill_orders(s, by_grid);
  return s;
}

namespace {

std::vector<std::pair<int, double>> diffusive_levels(int J0, int levels, double dt_scale,
                                                     double t_final) {
  std::vector<std::pair<int, double>> out;
  for (int k = 0, J = J0; k < levels; ++k, J *= 2) {
    const double dy = 2.0 / J;
    out.emplace_back(J, t_final / std::ceil(t_final / (dt_scale * dy * dy)));
  }
  return out;
}

}  // namespace

ConvergenceStudy spatial_convergence(const ModelSpec& spec, int J0, int levels, double dt_scale,
                                     double t_final) {
  return run_study("spatial (dt ~ dy^2, prescribed fronts)", spec,
                   diffusive_levels(J0, levels, dt_scale, t_final), t_final, true, false);
}

ConvergenceStudy temporal_convergence(const ModelSpec& spec, int J, double dt0, int levels,
                                      double t_final) {
  std::vector<std::pair<int, double>> lv;
  double dt = dt0;
  for (int k = 0; k < levels; ++k, dt *= 0.5) lv.emplace_back(J, dt);
  return run_study("temporal (fixed fine grid, prescribed fronts)", spec, lv, t_final, false,
                   false);
}

ConvergenceStudy stefan_coupled_convergence(const ModelSpec& spec, int J0, int levels,
                                            double dt_scale, double t_final) {
  return run_study("combined (dt ~ dy^2, live Stefan fronts)", spec,
                   diffusive_levels(J0, levels, dt_scale, t_final), t_final, true, true);
}

std::vector<ComparisonCase> comparison_suite(const ModelSpec& spec,
                                             const std::vector<OrderedPair>& pairs,
                                             const SolverConfig& cfg, double tolerance) {
  std::vector<ComparisonCase> out;
  for (const auto& pair : pairs) {
    const Trajectory lo = simulate(spec, pair.lower, cfg);
    const Trajectory up = simulate(spec, pair.upper, cfg);
    ComparisonCase c;
    c.name = pair.name;
    const std::size_t n = std::min(lo.snapshots.size(), up.snapshots.size());
    for (std::size_t k = 0; k < n; ++k) {
      const FrontState& a = lo.snapshots[k];
      const FrontState& b = up.snapshots[k];
      if (a.t != b.t) continue;
      ++c.compared_times;
      c.worst_front_gap = std::min({c.worst_front_gap, b.geom.h - a.geom.h, a.geom.g - b.geom.g});
      for (int j = 0; j <= a.cells(); ++j) {
        const double x = y_to_x(a.geom, a.y(j));
        const auto [ub, vb] = sample_at_x(b, x);
        c.worst_field_gap = std::min({c.worst_field_gap, ub - a.m[j], vb - a.n[j]});
      }
    }
    c.pass = lo.status == RunStatus::completed && up.status == RunStatus::completed &&
             c.compared_times > 0 && c.worst_front_gap >= -tolerance &&
             c.worst_field_gap >= -tolerance;
    out.push_back(c);
  }
  return out;
}

bool capacity_dominates(const ModelSpec& spec, const Trajectory& traj) {
  return traj.highest_u <= spec.N1 * (1.0 + 1e-8) && traj.highest_v <= spec.N2 * (1.0 + 1e-8);
}

AlmostPeriod detect_almost_period(std::span<const double> s, double spacing, double max_lag) {
  AlmostPeriod out;
  const std::size_t n = s.size();
  if (n < 8) return out;

  // Remove the least-squares line.
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i);
    st += t;
    sy += s[i];
    stt += t * t;
    sty += t * s[i];
  }
  const double dn = static_cast<double>(n);
  const double slope = (dn * sty - st * sy) / (dn * stt - st * st);
  const double icpt = (sy - slope * st) / dn;
  std::vector<double> d(n);
  double energy = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = s[i] - (icpt + slope * static_cast<double>(i));
    energy += d[i] * d[i];
    scale = std::max(scale, std::abs(s[i]));
  }

  const std::size_t max_k = std::min<std::size_t>(n / 2, static_cast<std::size_t>(max_lag / spacing));
  auto discrepancy = [&](std::size_t k) {
    double worst = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) worst = std::max(worst, std::abs(s[i + k] - s[i]));
    return worst;
  };
  if (energy <= 1e-24 * dn * std::max(1.0, scale * scale) || max_k < 3) {
    out.discrepancy = discrepancy(std::max<std::size_t>(1, max_k));
    return out;
  }

  std::vector<double> r(max_k + 1, 0.0);
  for (std::size_t k = 0; k <= max_k; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) acc += d[i] * d[i + k];
    r[k] = acc / static_cast<double>(n - k) / (energy / dn);
  }
  std::size_t start = 1;
  while (start < max_k && r[start] > 0.0) ++start;
  std::size_t best = 0;
  for (std::size_t k = std::max<std::size_t>(start, 1); k < max_k; ++k) {
    if (r[k] >= r[k - 1] && r[k] >= r[k + 1] && (best == 0 || r[k] > r[best])) best = k;
  }
  if (best == 0) {
    out.discrepancy = discrepancy(max_k);
    return out;
  }
  // Parabolic refinement of the peak position.
  double offset = 0.0;
  const double denom = r[best - 1] - 2.0 * r[best] + r[best + 1];
  if (denom < 0.0) offset = 0.5 * (r[best - 1] - r[best + 1]) / denom;
  out.period = (static_cast<double>(best) + offset) * spacing;
  out.correlation = r[best];
  out.discrepancy = discrepancy(best);
  return out;
}

std::vector<double> resample_probe(const Trajectory& traj, std::size_t probe, bool use_v,
                                   double t0, double t1, double spacing) {
  std::vector<double> out;
  const auto& rows = traj.probes;
  if (rows.empty()) return out;
  std::size_t k = 0;
  for (double t = t0; t <= t1 + 1e-12; t += spacing) {
    while (k + 1 < rows.size() && rows[k + 1].t < t) ++k;
    if (k + 1 >= rows.size()) {
      out.push_back(use_v ? rows.back().v[probe] : rows.back().u[probe]);
      continue;
    }
    const auto& a = rows[k];
    const auto& b = rows[k + 1];
    const double w = std::clamp((t - a.t) / (b.t - a.t), 0.0, 1.0);
    const double va = use_v ? a.v[probe] : a.u[probe];
    const double vb = use_v ? b.v[probe] : b.u[probe];
    out.push_back((1.0 - w) * va + w * vb);
  }
  return out;
}

std::vector<ProbeReport> spreading_state_probe(const Trajectory& traj, double floor_fraction,
                                               double spacing) {
  std::vector<ProbeReport> out;
  if (traj.probes.empty()) return out;
  const double t_begin = traj.probes.front().t;
  const double t_end = traj.probes.back().t;
  const double t_floor = t_end - floor_fraction * (t_end - t_begin);
  const double t_half = 0.5 * (t_begin + t_end);

  for (std::size_t p = 0; p < traj.probe_points.size(); ++p) {
    ProbeReport r;
    r.x = traj.probe_points[p];
    r.tail_floor_u = std::numeric_limits<double>::infinity();
    r.tail_floor_v = std::numeric_limits<double>::infinity();
    for (const auto& row : traj.probes) {
      if (row.t < t_floor) continue;
      r.tail_floor_u = std::min(r.tail_floor_u, row.u[p]);
      r.tail_floor_v = std::min(r.tail_floor_v, row.v[p]);
    }
    const auto series = resample_probe(traj, p, false, t_half, t_end, spacing);
    r.u_period = detect_almost_period(series, spacing, 0.5 * (t_end - t_half));
    out.push_back(r);
  }
  return out;
}

}  // namespace wnv
