#include "wnv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wnv/linalg.hpp"

namespace wnv {

namespace {

constexpr double kUndershoot = 1e-10;  // clip_tiny tolerance below zero
constexpr double kOvershoot = 1e-8;    // relative tolerance above capacity

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Returns false when the values leave [-kUndershoot, cap (1 + kOvershoot)], or
// leave [0, ...] in reject mode. Tiny undershoots are clipped in clip mode.
bool enforce_bounds(std::vector<double>& v, double cap, BoundMode mode) {
  for (double& x : v) {
    if (x > cap * (1.0 + kOvershoot)) return false;
    if (x < 0.0) {
      if (mode == BoundMode::reject_step || x < -kUndershoot) return false;
      x = 0.0;
    }
  }
  return true;
}

double sup(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

double trapezoid(const std::vector<double>& v, double dx) {
  double s = 0.0;
  for (std::size_t j = 1; j + 1 < v.size(); ++j) s += v[j];
  return dx * (s + 0.5 * (v.front() + v.back()));
}

FrontGeometry stefan_update(const ModelSpec& spec, const FrontGeometry& geom,
                            const std::vector<double>& m, double dt) {
  const double scale = -spec.mu * 2.0 / geom.width();
  FrontGeometry next;
  next.hdot = scale * boundary_derivative(m, Side::right);
  next.gdot = scale * boundary_derivative(m, Side::left);
  next.h = geom.h + dt * next.hdot;
  next.g = geom.g + dt * next.gdot;
  return next;
}

}  // namespace

std::string_view to_string(BoundMode mode) {
  return mode == BoundMode::clip_tiny ? "clip_tiny" : "reject_step";
}

BoundMode bound_mode_from_string(std::string_view name) {
  if (name == "clip_tiny") return BoundMode::clip_tiny;
  if (name == "reject_step") return BoundMode::reject_step;
  throw std::invalid_argument("unknown bound mode '" + std::string(name) + "'");
}

std::string_view to_string(StepStatus status) {
  switch (status) {
    case StepStatus::ok: return "ok";
    case StepStatus::non_finite: return "non_finite";
    case StepStatus::no_convergence: return "no_convergence";
    case StepStatus::bound_violation: return "bound_violation";
  }
  return "?";
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::blowup: return "blowup";
    case RunStatus::step_floor: return "step_floor";
  }
  return "?";
}

void SolverConfig::validate() const {
  if (J < 16) throw std::invalid_argument("solver: J must be at least 16");
  if (!(dt_min > 0.0) || !(dt_min <= dt0) || !(dt0 <= dt_max))
    throw std::invalid_argument("solver: require 0 < dt_min <= dt0 <= dt_max");
  if (!(t_end > 0.0)) throw std::invalid_argument("solver: t_end must be positive");
  if (!(newton_tol > 0.0)) throw std::invalid_argument("solver: newton_tol must be positive");
  if (max_newton < 1) throw std::invalid_argument("solver: max_newton must be at least 1");
  for (double t : output_times)
    if (t < 0.0 || t > t_end) throw std::invalid_argument("solver: output time outside [0, t_end]");
}

double boundary_derivative(std::span<const double> m, Side side) {
  const std::size_t J = m.size() - 1;
  if (J < 3) throw std::invalid_argument("boundary_derivative: need at least 3 cells");
  const double dy = 2.0 / static_cast<double>(J);
  if (side == Side::right) return (3.0 * m[J] - 4.0 * m[J - 1] + m[J - 2]) / (2.0 * dy);
  return -(3.0 * m[0] - 4.0 * m[1] + m[2]) / (2.0 * dy);
}

double boundary_derivative(const FrontState& state, Side side) {
  return boundary_derivative(std::span<const double>(state.m), side);
}

FrontState initial_state(const ModelSpec& spec, const InitialData& init, int J) {
  FrontState s;
  s.t = 0.0;
  s.m.assign(J + 1, 0.0);
  s.n.assign(J + 1, 0.0);
  for (int j = 1; j < J; ++j) {
    const auto [u, v] = init.at_y(-1.0 + 2.0 * j / J);
    s.m[j] = u;
    s.n[j] = v;
  }
  s.geom.g = -spec.h0;
  s.geom.h = spec.h0;
  // Initial velocities: -mu U0'(+-h0), with U0'(x) = m_y / h0.
  const FrontGeometry v = stefan_update(spec, s.geom, s.m, 0.0);
  s.geom.gdot = v.gdot;
  s.geom.hdot = v.hdot;
  return s;
}

StepResult step(const ModelSpec& spec, const FrontState& state, double dt,
                const SolverConfig& cfg, const StepHooks* hooks) {
  const int J = state.cells();
  const int n_int = J - 1;
  const double dy = state.dy();
  const double t1 = state.t + dt;
  const FrontGeometry& geom = state.geom;
  const double a_coef = 4.0 / (geom.width() * geom.width());
  const double inv_dt = 1.0 / dt;

  // Interior node i corresponds to grid index j = i + 1.
  std::vector<double> a1(n_int), a2(n_int), d1(n_int), d2(n_int), b(n_int);
  std::vector<double> src_m(n_int, 0.0), src_n(n_int, 0.0);
  for (int i = 0; i < n_int; ++i) {
    const double y = state.y(i + 1);
    const double x = y_to_x(geom, y);
    a1[i] = spec.a1(x, t1);
    a2[i] = spec.a2(x, t1);
    d1[i] = spec.d1(x, t1);
    d2[i] = spec.d2(x, t1);
    b[i] = metric_terms(geom, y).b_coef;
    if (hooks && hooks->source) std::tie(src_m[i], src_n[i]) = hooks->source(y, t1);
  }

  const double diff_m = spec.D1 * a_coef / (dy * dy);
  const double diff_n = spec.D2 * a_coef / (dy * dy);
  std::vector<double> lo_m(n_int), up_m(n_int), lo_n(n_int), up_n(n_int);
  for (int i = 0; i < n_int; ++i) {
    const double adv = b[i] / (2.0 * dy);
    lo_m[i] = -diff_m - adv;
    up_m[i] = -diff_m + adv;
    lo_n[i] = -diff_n - adv;
    up_n[i] = -diff_n + adv;
  }

  StepResult out;
  out.state.t = t1;
  std::vector<double> m = state.m;
  std::vector<double> n = state.n;
  std::vector<double> diag(n_int), rhs(n_int), scratch(n_int);

  // Gauss-Seidel on the two rows: m with lagged n, then n with the new m.
  // At convergence this is the fully implicit nonlinear backward-Euler system.
  double residual = 0.0;
  bool converged = false;
  for (int it = 1; it <= cfg.max_newton; ++it) {
    for (int i = 0; i < n_int; ++i) {
      const int j = i + 1;
      diag[i] = inv_dt + 2.0 * diff_m + d1[i] + a1[i] * n[j];
      rhs[i] = state.m[j] * inv_dt + a1[i] * spec.N1 * n[j] + src_m[i];
    }
    solve_tridiagonal(lo_m, diag, up_m, rhs, scratch);
    std::copy(rhs.begin(), rhs.end(), m.begin() + 1);

    for (int i = 0; i < n_int; ++i) {
      const int j = i + 1;
      diag[i] = inv_dt + 2.0 * diff_n + d2[i] + a2[i] * m[j];
      rhs[i] = state.n[j] * inv_dt + a2[i] * spec.N2 * m[j] + src_n[i];
    }
    solve_tridiagonal(lo_n, diag, up_n, rhs, scratch);
    std::copy(rhs.begin(), rhs.end(), n.begin() + 1);

    // The n row is exact for the current m, so only the m row carries residual.
    residual = 0.0;
    for (int i = 0; i < n_int; ++i) {
      const int j = i + 1;
      const double r = (m[j] - state.m[j]) * inv_dt + lo_m[i] * m[j - 1] +
                       (2.0 * diff_m) * m[j] + up_m[i] * m[j + 1] -
                       (a1[i] * (spec.N1 - m[j]) * n[j] - d1[i] * m[j]) - src_m[i];
      residual = std::max(residual, std::abs(r) * dt);
    }
    out.iterations = it;
    if (!std::isfinite(residual)) break;
    if (residual < cfg.newton_tol) {
      converged = true;
      break;
    }
  }
  out.residual = residual;

  if (!all_finite(m) || !all_finite(n) || !std::isfinite(residual)) {
    out.status = StepStatus::non_finite;
    return out;
  }
  if (!converged) {
    out.status = StepStatus::no_convergence;
    return out;
  }
  m.front() = m.back() = 0.0;
  n.front() = n.back() = 0.0;
  const bool check = !hooks || hooks->check_bounds;
  if (check && (!enforce_bounds(m, spec.N1, cfg.bound_mode) ||
                !enforce_bounds(n, spec.N2, cfg.bound_mode))) {
    out.status = StepStatus::bound_violation;
    return out;
  }

  out.state.geom = (hooks && hooks->geometry) ? hooks->geometry(t1)
                                              : stefan_update(spec, geom, m, dt);
  if (!std::isfinite(out.state.geom.g) || !std::isfinite(out.state.geom.h) ||
      !(out.state.geom.h > out.state.geom.g)) {
    out.status = StepStatus::non_finite;
    return out;
  }
  out.state.m = std::move(m);
  out.state.n = std::move(n);
  return out;
}

SummaryRow summarize(const FrontState& s) {
  SummaryRow r;
  r.t = s.t;
  r.g = s.geom.g;
  r.h = s.geom.h;
  r.gdot = s.geom.gdot;
  r.hdot = s.geom.hdot;
  r.sup_u = sup(s.m);
  r.sup_v = sup(s.n);
  const double dx = s.dy() * s.geom.width() / 2.0;
  r.mass_u = trapezoid(s.m, dx);
  r.mass_v = trapezoid(s.n, dx);
  return r;
}

std::pair<double, double> sample_at_x(const FrontState& s, double x) {
  if (x <= s.geom.g || x >= s.geom.h) return {0.0, 0.0};
  const double y = x_to_y(s.geom, x);
  const int J = s.cells();
  const double pos = (y + 1.0) / s.dy();
  const int j = std::clamp(static_cast<int>(pos), 0, J - 1);
  const double w = pos - j;
  return {(1.0 - w) * s.m[j] + w * s.m[j + 1], (1.0 - w) * s.n[j] + w * s.n[j + 1]};
}

std::pair<double, double> Trajectory::fronts_at(double t) const {
  if (summaries.empty()) throw std::logic_error("fronts_at: empty trajectory");
  if (t <= summaries.front().t) return {summaries.front().g, summaries.front().h};
  if (t >= summaries.back().t) return {summaries.back().g, summaries.back().h};
  const auto it = std::lower_bound(summaries.begin(), summaries.end(), t,
                                   [](const SummaryRow& r, double v) { return r.t < v; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (t - lo.t) / (hi.t - lo.t);
  return {lo.g + w * (hi.g - lo.g), lo.h + w * (hi.h - lo.h)};
}

namespace {

void record(Trajectory& traj, const FrontState& s) {
  traj.summaries.push_back(summarize(s));
  if (!traj.probe_points.empty()) {
    ProbeRow row;
    row.t = s.t;
    for (double x : traj.probe_points) {
      const auto [u, v] = sample_at_x(s, x);
      row.u.push_back(u);
      row.v.push_back(v);
    }
    traj.probes.push_back(std::move(row));
  }
  for (double v : s.m) {
    traj.lowest_value = std::min(traj.lowest_value, v);
    traj.highest_u = std::max(traj.highest_u, v);
  }
  for (double v : s.n) {
    traj.lowest_value = std::min(traj.lowest_value, v);
    traj.highest_v = std::max(traj.highest_v, v);
  }
}

}  // namespace

Trajectory simulate_from(const ModelSpec& spec, FrontState state, const SolverConfig& cfg,
                         const StepHooks* hooks) {
  cfg.validate();
  Trajectory traj;
  traj.probe_points = cfg.probe_points;
  traj.lowest_value = 0.0;

  std::vector<double> stops = cfg.output_times;
  stops.push_back(cfg.t_end);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  std::size_t next_stop = 0;

  auto take_snapshot_if_due = [&](const FrontState& s) {
    for (double t_out : cfg.output_times)
      if (t_out == s.t) traj.snapshots.push_back(s);
  };

  record(traj, state);
  take_snapshot_if_due(state);
  while (next_stop < stops.size() && stops[next_stop] <= state.t) ++next_stop;

  double dt_nominal = cfg.dt0;
  int accepted_streak = 0;
  while (next_stop < stops.size()) {
    const double target = stops[next_stop];
    double dt = std::min(dt_nominal, target - state.t);
    const bool lands = (target - (state.t + dt)) <= 1e-12 * std::max(1.0, target);
    if (lands) dt = target - state.t;

    StepResult r = step(spec, state, dt, cfg, hooks);
    if (r.status == StepStatus::non_finite) {
      traj.status = RunStatus::blowup;
      return traj;
    }
    if (r.status != StepStatus::ok) {
      ++traj.rejected_steps;
      accepted_streak = 0;
      dt_nominal = std::min(dt_nominal, dt) * 0.5;
      if (dt_nominal < cfg.dt_min) {
        traj.status = RunStatus::step_floor;
        return traj;
      }
      continue;
    }

    state = std::move(r.state);
    if (lands) {
      state.t = target;
      ++next_stop;
    }
    record(traj, state);
    take_snapshot_if_due(state);

    if (++accepted_streak >= 5) {
      dt_nominal = std::min(dt_nominal * 1.2, cfg.dt_max);
      accepted_streak = 0;
    }
  }
  traj.status = RunStatus::completed;
  return traj;
}

Trajectory simulate(const ModelSpec& spec, const InitialData& init, const SolverConfig& cfg,
                    const StepHooks* hooks) {
  spec.validate();
  init.validate(spec);
  cfg.validate();
  return simulate_from(spec, initial_state(spec, init, cfg.J), cfg, hooks);
}

}  // namespace wnv
