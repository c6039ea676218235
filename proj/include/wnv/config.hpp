#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wnv/lyapunov.hpp"
#include "wnv/model.hpp"
#include "wnv/solver.hpp"
#include "wnv/thresholds.hpp"

namespace wnv {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Command-specific settings.
struct RunSection {
  double L_lo = 0.25;
  double L_hi = 4.0;
  std::vector<double> shifts = {0.0};
  double mu_lo = 0.05;
  double mu_hi = 2.0;
  double L_star = 0.0;  // 0: compute with find_L_star when needed
  std::vector<double> sweep_L = {0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0};
  std::vector<double> lambda_times;  // lambda(t) checkpoints for classify
  int snapshot_count = 100;          // evenly spaced snapshots when solver.output_times is empty
  std::string out_dir = "out";
  std::uint64_t seed = 12345;
  ClassifyConfig classify;

  bool operator==(const RunSection&) const = default;
};

struct InitSection {
  InitialData data;          // cosine amplitudes; samples filled by load_samples
  std::string samples_path;  // CSV with columns U,V when kind = samples

  bool operator==(const InitSection&) const = default;
};

struct RunConfig {
  ModelSpec model = default_paper_spec();
  InitSection init;
  SolverConfig solver;
  LyapunovConfig lyapunov;
  RunSection run;

  bool operator==(const RunConfig&) const = default;
};

/// Sectioned key = value text. Unknown sections or keys are errors.
///
///   [model]   D1 D2 N1 N2 beta mu h0, and per field f in
///             {alpha1, alpha2, gamma, death}: f.base f.harmonics f.spatial_amp
///             f.profile f.floor. Harmonics are "kind:amplitude:frequency[:phase]"
///             items, e.g. "cos:0.56:0.5, sin:0.1:pi/3", or "none".
///   [init]    kind (cosine|samples) amp_u amp_v samples
///   [solver]  J dt0 dt_min dt_max t_end newton_tol max_newton output_times
///             bound_mode probe_points
///   [lyapunov] J dt horizon renorm_low renorm_high tol
///   [run]     L_lo L_hi shifts mu_lo mu_hi L_star sweep_L lambda_times
///             snapshot_count out_dir seed extinction_eps width_slope_eps
///             window spreading_margin
///
/// Numbers accept products and quotients of literals and `pi` (pi/3, 0.5*pi).
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Canonical text; parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& config);

/// Evaluates a numeric token as accepted by parse_config.
double parse_number(std::string_view token);

/// Reads init.samples_path (relative paths against base_dir) into
/// init.data when kind = samples; no-op otherwise.
void load_samples(RunConfig& config, const std::string& base_dir = ".");

}  // namespace wnv
