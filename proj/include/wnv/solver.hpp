#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "wnv/model.hpp"
#include "wnv/transform.hpp"

namespace wnv {

enum class BoundMode { clip_tiny, reject_step };

std::string_view to_string(BoundMode mode);
BoundMode bound_mode_from_string(std::string_view name);

struct SolverConfig {
  int J = 400;  // grid cells on [-1, 1]
  double dt0 = 0.01;
  double dt_min = 1e-6;
  double dt_max = 0.05;
  double t_end = 300.0;
  double newton_tol = 1e-10;  // sup of dt-scaled residual, density units
  int max_newton = 50;
  std::vector<double> output_times;
  BoundMode bound_mode = BoundMode::clip_tiny;
  std::vector<double> probe_points;  // x positions recorded every accepted step

  void validate() const;
  bool operator==(const SolverConfig&) const = default;
};

/// Solution on the fixed grid y_j = -1 + 2j/J plus the front geometry.
struct FrontState {
  double t = 0.0;
  std::vector<double> m;  // birds
  std::vector<double> n;  // mosquitoes
  FrontGeometry geom;

  int cells() const { return static_cast<int>(m.size()) - 1; }
  double dy() const { return 2.0 / cells(); }
  double y(int j) const { return -1.0 + dy() * j; }
};

enum class Side { left, right };

/// Second-order one-sided m_y at y = -1 (left) or y = 1 (right).
double boundary_derivative(const FrontState& state, Side side);
double boundary_derivative(std::span<const double> values, Side side);

/// State at t = 0: samples of the initial data on the y grid, g = -h0, h = h0,
/// and edge velocities from the Stefan rule applied to the initial profile.
FrontState initial_state(const ModelSpec& spec, const InitialData& init, int J);

enum class StepStatus { ok, non_finite, no_convergence, bound_violation };

std::string_view to_string(StepStatus status);

struct StepResult {
  StepStatus status = StepStatus::ok;
  FrontState state;
  int iterations = 0;
  double residual = 0.0;
};

/// Optional instrumentation for verification runs. `source` adds forcing to
/// both equations (evaluated at the new time level); `geometry` replaces the
/// Stefan update with prescribed fronts. Forced problems need not respect
/// the density bounds, so bound checks can be switched off.
struct StepHooks {
  std::function<std::pair<double, double>(double y, double t)> source;
  std::function<FrontGeometry(double t)> geometry;
  bool check_bounds = true;
};

/// One backward-Euler step of the fixed-domain system followed by the
/// Stefan front update. Never throws on numerical failure; inspect status.
StepResult step(const ModelSpec& spec, const FrontState& state, double dt,
                const SolverConfig& cfg, const StepHooks* hooks = nullptr);

struct SummaryRow {
  double t = 0.0;
  double g = 0.0;
  double h = 0.0;
  double gdot = 0.0;
  double hdot = 0.0;
  double sup_u = 0.0;
  double sup_v = 0.0;
  double mass_u = 0.0;
  double mass_v = 0.0;

  double width() const { return h - g; }
};

struct ProbeRow {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> v;
};

enum class RunStatus { completed, blowup, step_floor };

std::string_view to_string(RunStatus status);

struct Trajectory {
  std::vector<SummaryRow> summaries;  // initial row plus one per accepted step
  std::vector<FrontState> snapshots;
  std::vector<double> probe_points;
  std::vector<ProbeRow> probes;
  RunStatus status = RunStatus::completed;
  int rejected_steps = 0;
  double lowest_value = 0.0;  // min over all accepted m, n values
  double highest_u = 0.0;     // max over all accepted m values
  double highest_v = 0.0;     // max over all accepted n values

  std::size_t accepted_steps() const { return summaries.empty() ? 0 : summaries.size() - 1; }
  const SummaryRow& final_row() const { return summaries.back(); }
  /// Linear interpolation of the front positions at time t.
  std::pair<double, double> fronts_at(double t) const;
};

SummaryRow summarize(const FrontState& state);

/// Value of (U, V) at physical position x; zero outside [g, h].
std::pair<double, double> sample_at_x(const FrontState& state, double x);

Trajectory simulate(const ModelSpec& spec, const InitialData& init, const SolverConfig& cfg,
                    const StepHooks* hooks = nullptr);

/// Integrate from a given state (used by the verification drivers).
Trajectory simulate_from(const ModelSpec& spec, FrontState start, const SolverConfig& cfg,
                         const StepHooks* hooks = nullptr);

}  // namespace wnv
