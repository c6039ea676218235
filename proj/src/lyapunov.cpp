#include "wnv/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>

#include "wnv/errors.hpp"
#include "wnv/linalg.hpp"

namespace wnv {

namespace {

constexpr int kWindows = 8;
constexpr double kTailFraction = 0.25;
constexpr double kStudentT7 = 2.365;  // 97.5% quantile, 7 degrees of freedom

struct Regression {
  double n = 0, st = 0, sy = 0, stt = 0, sty = 0;

  void add(double t, double y) {
    n += 1.0;
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  double slope() const {
    const double denom = n * stt - st * st;
    return denom > 0.0 ? (n * sty - st * sy) / denom : 0.0;
  }
};

// Inverse of the backward-Euler growth factor per step: exp(rate*dt) = 1/(1 - dt*s).
double invert_amplification(double rate, double dt) { return (1.0 - std::exp(-rate * dt)) / dt; }

double band(const LyapunovEstimate& e) {
  return std::max(e.ci_high, e.lambda) - std::min(e.ci_low, e.lambda);
}

}  // namespace

void LyapunovConfig::validate() const {
  if (J < 8) throw std::invalid_argument("lyapunov: J must be at least 8");
  if (!(dt > 0.0)) throw std::invalid_argument("lyapunov: dt must be positive");
  if (!(horizon > dt * 16)) throw std::invalid_argument("lyapunov: horizon too short for dt");
  if (!(renorm_low > 0.0) || !(renorm_low < 1.0) || !(renorm_high > 1.0))
    throw std::invalid_argument("lyapunov: need 0 < renorm_low < 1 < renorm_high");
  if (!(tol > 0.0)) throw std::invalid_argument("lyapunov: tol must be positive");
}

LyapunovEstimate lyapunov_exponent(const LinearizationMatrix& mat, double L, Diffusivities D,
                                   const LyapunovConfig& cfg, std::span<const double> initial) {
  cfg.validate();
  if (!(L > 0.0)) throw std::invalid_argument("lyapunov: L must be positive");
  const int nodes = cfg.J - 1;
  const double dx = 2.0 * L / cfg.J;
  const double inv_dt = 1.0 / cfg.dt;
  const double k0 = D[0] / (dx * dx);
  const double k1 = D[1] / (dx * dx);

  std::vector<LinearizationMatrix::Parts> spatial(nodes);
  std::vector<double> I(2 * nodes);
  if (!initial.empty() && initial.size() != I.size())
    throw std::invalid_argument("lyapunov: initial profile has the wrong size");
  for (int i = 0; i < nodes; ++i) {
    const double x = -L + (i + 1) * dx;
    spatial[i] = mat.spatial_parts(x);
    const double bump = std::sin(std::numbers::pi * (x + L) / (2.0 * L));
    I[2 * i] = initial.empty() ? bump : initial[2 * i];
    I[2 * i + 1] = initial.empty() ? bump : initial[2 * i + 1];
  }

  std::vector<Mat2> blocks(nodes);
  auto fill_blocks = [&](double t) {
    const auto temporal = mat.temporal_parts(t);
    for (int i = 0; i < nodes; ++i) {
      const Mat2 a = mat.combine(temporal, spatial[i]);
      blocks[i] = Mat2{{{inv_dt + 2.0 * k0 - a[0][0], -a[0][1]},
                        {-a[1][0], inv_dt + 2.0 * k1 - a[1][1]}}};
    }
  };
  // The time part is probed at two instants to decide whether blocks change.
  const bool autonomous = mat.temporal_parts(0.0) == mat.temporal_parts(1.2345);
  fill_blocks(cfg.dt);
  BlockTridiagonal2 system({-k0, -k1}, blocks);

  auto sup_norm = [&] {
    double s = 0.0;
    for (double v : I) s = std::max(s, std::abs(v));
    return s;
  };

  LyapunovEstimate est;
  double log_acc = 0.0;
  {
    const double s0 = sup_norm();
    if (!(s0 > 0.0)) throw std::invalid_argument("lyapunov: initial profile must be nonzero");
    for (double& v : I) v /= s0;
  }

  const long steps = std::lround(cfg.horizon / cfg.dt);
  const double horizon = steps * cfg.dt;
  const double tail_start = horizon * (1.0 - kTailFraction);
  const double window_len = horizon * kTailFraction / kWindows;
  std::array<Regression, kWindows> windows;

  for (long n = 1; n <= steps; ++n) {
    const double t = n * cfg.dt;
    if (!autonomous) {
      fill_blocks(t);
      system.factor(blocks);
    }
    for (double& v : I) v *= inv_dt;
    system.solve(I);

    const double s = sup_norm();
    if (!std::isfinite(s) || s == 0.0)
      throw NumericalError("lyapunov: non-finite or vanished iterate at t=" + std::to_string(t));
    if (s > cfg.renorm_high || s < cfg.renorm_low) {
      for (double v : I) est.cone_preserved = est.cone_preserved && v > 0.0;
      for (double& v : I) v /= s;
      log_acc += std::log(s);
      ++est.renorm_count;
    }
    if (t > tail_start) {
      const int w = std::min(kWindows - 1, static_cast<int>((t - tail_start) / window_len));
      windows[w].add(t, log_acc + std::log(sup_norm()));
    }
  }
  for (double v : I) est.cone_preserved = est.cone_preserved && v > 0.0;

  const double raw = (log_acc + std::log(sup_norm())) / horizon;
  est.lambda = invert_amplification(raw, cfg.dt);
  est.horizon = horizon;

  std::array<double, kWindows> slopes{};
  double mean = 0.0;
  for (int w = 0; w < kWindows; ++w) {
    slopes[w] = invert_amplification(windows[w].slope(), cfg.dt);
    mean += slopes[w] / kWindows;
  }
  double var = 0.0;
  for (double s : slopes) var += (s - mean) * (s - mean) / (kWindows - 1);
  const double half = kStudentT7 * std::sqrt(var / kWindows);
  est.ci_low = mean - half;
  est.ci_high = mean + half;
  // The full-horizon rate carries an O(1/horizon) start-up transient, so it is
  // compared with the tail interval up to half the tolerance.
  est.converged = est.ci_width() < cfg.tol && est.lambda >= est.ci_low - 0.5 * cfg.tol &&
                  est.lambda <= est.ci_high + 0.5 * cfg.tol;
  return est;
}

double lyapunov_constant_oracle(const Mat2& a0, double L, Diffusivities D) {
  if (a0[0][1] < 0.0 || a0[1][0] < 0.0)
    throw std::invalid_argument("oracle: off-diagonal entries must be nonnegative");
  const double k2 = std::isinf(L) ? 0.0 : std::pow(std::numbers::pi / (2.0 * L), 2);
  Mat2 m = a0;
  m[0][0] -= k2 * D[0];
  m[1][1] -= k2 * D[1];
  return principal_eigenvalue(m);
}

std::vector<SweepEntry> lambda_sweep(const LinearizationMatrix& mat, Diffusivities D,
                                     const std::vector<double>& L_list,
                                     const LyapunovConfig& cfg) {
  if (!std::is_sorted(L_list.begin(), L_list.end()))
    throw std::invalid_argument("lambda_sweep: L list must be ascending");
  std::vector<std::future<LyapunovEstimate>> jobs;
  jobs.reserve(L_list.size());
  for (double L : L_list)
    jobs.push_back(std::async(std::launch::async,
                              [&mat, D, L, &cfg] { return lyapunov_exponent(mat, L, D, cfg); }));

  std::vector<SweepEntry> out;
  for (std::size_t k = 0; k < L_list.size(); ++k) {
    SweepEntry e;
    e.L = L_list[k];
    e.estimate = jobs[k].get();
    if (k > 0) {
      const auto& prev = out.back().estimate;
      e.monotonicity_violation =
          e.estimate.lambda < prev.lambda - (band(e.estimate) + band(prev));
    }
    out.push_back(e);
  }
  return out;
}

std::vector<LambdaAtTime> lambda_of_t(const ModelSpec& spec, const Trajectory& traj,
                                      const std::vector<double>& t_list,
                                      const LyapunovConfig& cfg) {
  if (traj.summaries.empty()) throw std::invalid_argument("lambda_of_t: empty trajectory");
  const double t0 = traj.summaries.front().t;
  const double t1 = traj.summaries.back().t;
  const LinearizationMatrix base = linearization(spec);
  const Diffusivities D{spec.D1, spec.D2};

  std::vector<LambdaAtTime> out(t_list.size());
  std::vector<std::future<LyapunovEstimate>> jobs;
  for (std::size_t k = 0; k < t_list.size(); ++k) {
    const double t = t_list[k];
    if (t < t0 || t > t1) throw std::invalid_argument("lambda_of_t: time outside trajectory");
    const auto [g, h] = traj.fronts_at(t);
    out[k].t = t;
    out[k].half_width = 0.5 * (h - g);
    out[k].center = 0.5 * (g + h);
    jobs.push_back(std::async(std::launch::async, [&base, D, &cfg, L = out[k].half_width,
                                                   c = out[k].center] {
      return lyapunov_exponent(base.shifted_x(c), L, D, cfg);
    }));
  }
  for (std::size_t k = 0; k < jobs.size(); ++k) out[k].estimate = jobs[k].get();
  return out;
}

}  // namespace wnv
