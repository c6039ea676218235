#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wnv/lyapunov.hpp"
#include "wnv/model.hpp"
#include "wnv/solver.hpp"

namespace wnv {

enum class Verdict { Spreading, Vanishing, Undetermined };

std::string_view to_string(Verdict v);

struct ClassifyConfig {
  double extinction_eps = 1e-6;   // density
  double width_slope_eps = 1e-4;  // length per time
  double window = 0.2;            // trailing fraction of the horizon
  double spreading_margin = 0.5;  // spreading bar is 2 L* + margin

  bool operator==(const ClassifyConfig&) const = default;
};

struct Evidence {
  double final_width = 0.0;
  double max_width = 0.0;
  double final_sup_u = 0.0;
  double final_sup_v = 0.0;
  double window_norm_floor = 0.0;  // min over the window of max(supU, supV)
  double window_norm_peak = 0.0;   // max over the window of max(supU, supV)
  double width_slope = 0.0;        // least-squares slope of h - g over the window
  double norm_slope = 0.0;         // slope of log max(supU, supV) over the window
};

struct Classification {
  Verdict verdict = Verdict::Undetermined;
  Evidence evidence;
};

/// Finite-horizon spreading/vanishing verdict.
///   Spreading: width exceeded 2 L* + margin at some time.
///   Vanishing: norms below extinction_eps and width slope below
///              width_slope_eps over the trailing window.
/// Anything else (or a run that did not complete) is Undetermined.
Classification classify(const Trajectory& traj, double L_star, const ClassifyConfig& cfg = {});

struct LStarProbe {
  double L = 0.0;
  double lambda = 0.0;      // worst case over the shift sample
  double worst_shift = 0.0;
  double ci_width = 0.0;
  bool converged = true;
};

struct LStarResult {
  double L_star = 0.0;
  int iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::vector<LStarProbe> transcript;
};

/// Zero crossing in L of min over shifts of lambda(A(. + shift, .), L), by
/// bisection until |lambda| is below the estimate's CI width or the bracket is
/// narrower than 1e-2. Throws BadBracket when lambda(L_lo) < 0 < lambda(L_hi)
/// fails.
LStarResult find_L_star(const LinearizationMatrix& mat, Diffusivities D, double L_lo, double L_hi,
                        const LyapunovConfig& cfg, const std::vector<double>& shifts = {0.0});

std::vector<double> default_shift_sample();

struct MuProbe {
  double mu = 0.0;
  Verdict verdict = Verdict::Undetermined;
  double t_end = 0.0;
  double final_width = 0.0;
};

struct MuStarResult {
  double mu_star = 0.0;
  int iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::vector<MuProbe> transcript;
  bool transcript_monotone = true;
};

/// Bisection on mu with simulate + classify as the predicate. An Undetermined
/// probe is retried once with twice the horizon, then aborts with NotConverged.
/// Stops when the bracket is narrower than 1e-2 * mu_hi.
MuStarResult find_mu_star(const ModelSpec& spec_template, const InitialData& init,
                          double mu_lo, double mu_hi, const SolverConfig& solver, double L_star,
                          const ClassifyConfig& ccfg = {});

/// No probe at a larger mu is Vanishing while one at a smaller mu is Spreading.
bool transcript_monotone(const std::vector<MuProbe>& probes);

struct ClauseResult {
  std::string clause;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
};

/// Cross-checks a classified run against the dichotomy and threshold
/// statements. Undetermined runs produce an empty report.
std::vector<ClauseResult> dichotomy_check(const Trajectory& traj, const Classification& cls,
                                          double L_star, const std::vector<LambdaAtTime>& lyap,
                                          double tolerance = 0.1);

}  // namespace wnv
