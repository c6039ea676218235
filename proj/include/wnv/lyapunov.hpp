#pragma once

#include <array>
#include <span>
#include <vector>

#include "wnv/coefficients.hpp"
#include "wnv/model.hpp"
#include "wnv/solver.hpp"

namespace wnv {

struct LyapunovConfig {
  int J = 256;  // cells on [-L, L]
  double dt = 0.01;
  double horizon = 2000.0;
  double renorm_low = 1e-6;
  double renorm_high = 1e6;
  double tol = 5e-3;  // required width of the tail confidence interval

  void validate() const;
  bool operator==(const LyapunovConfig&) const = default;
};

/// Growth-rate estimate for I_t = D I_xx + A(x,t) I on [-L, L], Dirichlet.
struct LyapunovEstimate {
  double lambda = 0.0;    // full-horizon rate
  double horizon = 0.0;
  int renorm_count = 0;
  double ci_low = 0.0;    // tail confidence interval from windowed slopes
  double ci_high = 0.0;
  bool converged = false;
  bool cone_preserved = true;  // iterate stayed componentwise positive

  double ci_width() const { return ci_high - ci_low; }
};

using Diffusivities = std::array<double, 2>;

/// Integrates the linear system from a positive profile with periodic
/// renormalization of the sup norm and returns the average log growth rate.
/// `initial` optionally overrides the start profile (interleaved pairs at the
/// J-1 interior nodes, all entries positive).
///
/// The per-step backward-Euler amplification 1/(1 - dt s) is inverted so the
/// reported rate approximates the semi-discrete exponent s rather than
/// log(1/(1 - dt s))/dt.
LyapunovEstimate lyapunov_exponent(const LinearizationMatrix& mat, double L, Diffusivities D,
                                   const LyapunovConfig& cfg,
                                   std::span<const double> initial = {});

/// Principal eigenvalue of A0 - (pi/(2L))^2 diag(D) (the first Dirichlet mode
/// for constant coefficients). L = infinity drops the diffusion term.
double lyapunov_constant_oracle(const Mat2& a0, double L, Diffusivities D);

struct SweepEntry {
  double L = 0.0;
  LyapunovEstimate estimate;
  bool monotonicity_violation = false;  // drop from the previous entry beyond CI widths
};

/// Estimates at each L (ascending) in parallel and flags adjacent decreases
/// larger than the combined CI widths.
std::vector<SweepEntry> lambda_sweep(const LinearizationMatrix& mat, Diffusivities D,
                                     const std::vector<double>& L_list,
                                     const LyapunovConfig& cfg);

struct LambdaAtTime {
  double t = 0.0;
  double half_width = 0.0;
  double center = 0.0;
  LyapunovEstimate estimate;
};

/// lambda(t) with L = (h(t) - g(t))/2 and A re-centered at (g(t) + h(t))/2.
std::vector<LambdaAtTime> lambda_of_t(const ModelSpec& spec, const Trajectory& traj,
                                      const std::vector<double>& t_list,
                                      const LyapunovConfig& cfg);

}  // namespace wnv
