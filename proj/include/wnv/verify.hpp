#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wnv/model.hpp"
#include "wnv/solver.hpp"

namespace wnv {

// ---------------------------------------------------------------------------
// Manufactured solutions
//
// Exact fields m*(y,t) = n*(y,t) = exp(-t) cos(pi y / 2) are driven through
// the fixed-domain system by injecting the residual as a source term.

struct ConvergenceRow {
  int J = 0;
  double dt = 0.0;
  double error = 0.0;  // sup over grid and both fields at the final time
  double order = 0.0;  // observed order against the previous row (0 on the first)
};

struct ConvergenceStudy {
  std::string label;
  std::vector<ConvergenceRow> rows;

  double last_order() const { return rows.empty() ? 0.0 : rows.back().order; }
  double min_order() const;
};

/// Prescribed fronts g = -1 - 0.1 t, h = 1 + 0.1 t; J doubles per level with
/// dt = dt_scale * dy^2.
ConvergenceStudy spatial_convergence(const ModelSpec& spec, int J0 = 20, int levels = 3,
                                     double dt_scale = 0.5, double t_final = 0.5);

/// Prescribed fronts on a fixed fine grid; dt halves per level.
ConvergenceStudy temporal_convergence(const ModelSpec& spec, int J = 800, double dt0 = 0.04,
                                      int levels = 3, double t_final = 1.0);

/// Live Stefan coupling: the fronts follow the solver's own Stefan update and
/// are compared with the exact width w(t)^2 = 4 + 4 mu pi (1 - exp(-t)).
/// Report only.
ConvergenceStudy stefan_coupled_convergence(const ModelSpec& spec, int J0 = 20, int levels = 3,
                                            double dt_scale = 0.5, double t_final = 0.5);

/// Generic driver: runs the manufactured problem at one (J, dt).
double manufactured_error(const ModelSpec& spec, int J, double dt, double t_final,
                          bool live_stefan);

/// Runs each (J, dt) level in order; orders are taken against J when by_grid,
/// otherwise against dt.
ConvergenceStudy run_study(const std::string& label, const ModelSpec& spec,
                           const std::vector<std::pair<int, double>>& levels, double t_final,
                           bool by_grid, bool live_stefan);

// ---------------------------------------------------------------------------
// Comparison principle

struct OrderedPair {
  std::string name;
  InitialData lower;
  InitialData upper;
};

struct ComparisonCase {
  std::string name;
  bool pass = false;
  double worst_front_gap = 0.0;  // most negative of h_up - h_lo and g_lo - g_up
  double worst_field_gap = 0.0;  // most negative of U_up - U_lo, V_up - V_lo on the overlap
  int compared_times = 0;
};

/// Runs each pair with the same spec and solver settings and checks that the
/// upper run dominates fields and fronts at every output time.
std::vector<ComparisonCase> comparison_suite(const ModelSpec& spec,
                                             const std::vector<OrderedPair>& pairs,
                                             const SolverConfig& cfg, double tolerance = 1e-8);

/// Capacities N1, N2 bound every accepted state.
bool capacity_dominates(const ModelSpec& spec, const Trajectory& traj);

// ---------------------------------------------------------------------------
// Long-time behaviour of spreading runs

struct AlmostPeriod {
  double period = 0.0;       // best translation found (0 when the signal is flat)
  double correlation = 0.0;  // normalized autocorrelation at that lag
  double discrepancy = 0.0;  // sup |s(t + period) - s(t)| on the overlap
};

/// Autocorrelation-based translation estimate for a uniformly sampled signal.
/// A linear trend is removed first; the highest local maximum of the
/// autocorrelation past its first zero crossing (and within max_lag) wins.
AlmostPeriod detect_almost_period(std::span<const double> samples, double spacing,
                                  double max_lag);

struct ProbeReport {
  double x = 0.0;
  double tail_floor_u = 0.0;  // inf U over the trailing fraction
  double tail_floor_v = 0.0;
  AlmostPeriod u_period;
};

/// For each recorded probe point: positive floor over the last `floor_fraction`
/// of the run and almost-period of U over the last half.
std::vector<ProbeReport> spreading_state_probe(const Trajectory& traj,
                                               double floor_fraction = 0.2,
                                               double spacing = 0.1);

/// Uniform resampling of a probe column over [t0, t1].
std::vector<double> resample_probe(const Trajectory& traj, std::size_t probe, bool use_v,
                                   double t0, double t1, double spacing);

}  // namespace wnv
