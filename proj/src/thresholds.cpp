#include "wnv/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

#include "wnv/errors.hpp"

namespace wnv {

namespace {

double slope(const std::vector<double>& t, const std::vector<double>& y) {
  const double n = static_cast<double>(t.size());
  if (t.size() < 2) return 0.0;
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
  }
  const double denom = n * stt - st * st;
  return denom > 0.0 ? (n * sty - st * sy) / denom : 0.0;
}

LStarProbe worst_over_shifts(const LinearizationMatrix& mat, Diffusivities D, double L,
                             const LyapunovConfig& cfg, const std::vector<double>& shifts) {
  std::vector<std::future<LyapunovEstimate>> jobs;
  for (double s : shifts)
    jobs.push_back(std::async(std::launch::async, [&mat, D, L, &cfg, s] {
      return lyapunov_exponent(mat.shifted_x(s), L, D, cfg);
    }));
  LStarProbe p;
  p.L = L;
  p.lambda = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const LyapunovEstimate e = jobs[k].get();
    if (e.lambda < p.lambda) {
      p.lambda = e.lambda;
      p.worst_shift = shifts[k];
      p.ci_width = e.ci_width();
      p.converged = e.converged;
    }
  }
  return p;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Spreading: return "Spreading";
    case Verdict::Vanishing: return "Vanishing";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "?";
}

Classification classify(const Trajectory& traj, double L_star, const ClassifyConfig& cfg) {
  Classification out;
  if (traj.summaries.empty()) return out;
  Evidence& ev = out.evidence;
  const SummaryRow& last = traj.final_row();
  ev.final_width = last.width();
  ev.final_sup_u = last.sup_u;
  ev.final_sup_v = last.sup_v;
  for (const auto& r : traj.summaries) ev.max_width = std::max(ev.max_width, r.width());

  const double t_first = traj.summaries.front().t;
  const double t_window = last.t - cfg.window * (last.t - t_first);
  std::vector<double> ts, widths, log_norms;
  ev.window_norm_floor = std::numeric_limits<double>::infinity();
  ev.window_norm_peak = 0.0;
  for (const auto& r : traj.summaries) {
    if (r.t < t_window) continue;
    const double norm = std::max(r.sup_u, r.sup_v);
    ev.window_norm_floor = std::min(ev.window_norm_floor, norm);
    ev.window_norm_peak = std::max(ev.window_norm_peak, norm);
    ts.push_back(r.t);
    widths.push_back(r.width());
    log_norms.push_back(std::log(std::max(norm, std::numeric_limits<double>::min())));
  }
  ev.width_slope = slope(ts, widths);
  ev.norm_slope = slope(ts, log_norms);

  if (traj.status != RunStatus::completed) return out;
  const double bar = 2.0 * L_star + cfg.spreading_margin;
  if (ev.max_width > bar && ev.window_norm_floor > cfg.extinction_eps) {
    out.verdict = Verdict::Spreading;
  } else if (ev.window_norm_peak < cfg.extinction_eps && ev.width_slope < cfg.width_slope_eps) {
    out.verdict = Verdict::Vanishing;
  }
  return out;
}

std::vector<double> default_shift_sample() { return {-20.0, -10.0, -5.0, 0.0, 5.0, 10.0, 20.0}; }

LStarResult find_L_star(const LinearizationMatrix& mat, Diffusivities D, double L_lo, double L_hi,
                        const LyapunovConfig& cfg, const std::vector<double>& shifts) {
  if (!(L_lo > 0.0) || !(L_hi > L_lo))
    throw std::invalid_argument("find_L_star: need 0 < L_lo < L_hi");
  if (shifts.empty()) throw std::invalid_argument("find_L_star: empty shift sample");

  LStarResult out;
  const LStarProbe lo = worst_over_shifts(mat, D, L_lo, cfg, shifts);
  const LStarProbe hi = worst_over_shifts(mat, D, L_hi, cfg, shifts);
  out.transcript = {lo, hi};
  if (!(lo.lambda < 0.0 && hi.lambda > 0.0))
    throw BadBracket("find_L_star: lambda(L_lo)=" + std::to_string(lo.lambda) +
                     ", lambda(L_hi)=" + std::to_string(hi.lambda) + " do not bracket zero");

  double a = L_lo;
  double b = L_hi;
  constexpr int kMaxIterations = 60;
  while (b - a >= 1e-2) {
    if (++out.iterations > kMaxIterations) throw NotConverged("find_L_star: iteration cap");
    const double mid = 0.5 * (a + b);
    const LStarProbe p = worst_over_shifts(mat, D, mid, cfg, shifts);
    out.transcript.push_back(p);
    if (std::abs(p.lambda) < p.ci_width) {
      a = b = mid;
      break;
    }
    (p.lambda < 0.0 ? a : b) = mid;
  }
  out.bracket_lo = a;
  out.bracket_hi = b;
  out.L_star = 0.5 * (a + b);
  return out;
}

bool transcript_monotone(const std::vector<MuProbe>& probes) {
  for (const auto& p : probes) {
    for (const auto& q : probes) {
      if (p.mu < q.mu && p.verdict == Verdict::Spreading && q.verdict == Verdict::Vanishing)
        return false;
    }
  }
  return true;
}

MuStarResult find_mu_star(const ModelSpec& spec_template, const InitialData& init, double mu_lo,
                          double mu_hi, const SolverConfig& solver, double L_star,
                          const ClassifyConfig& ccfg) {
  if (!(mu_lo > 0.0) || !(mu_hi > mu_lo))
    throw std::invalid_argument("find_mu_star: need 0 < mu_lo < mu_hi");
  MuStarResult out;

  auto probe = [&](double mu) {
    ModelSpec spec = spec_template;
    spec.mu = mu;
    SolverConfig cfg = solver;
    for (int attempt = 0; attempt < 2; ++attempt) {
      const Trajectory traj = simulate(spec, init, cfg);
      const Classification c = classify(traj, L_star, ccfg);
      out.transcript.push_back({mu, c.verdict, cfg.t_end, c.evidence.final_width});
      if (c.verdict != Verdict::Undetermined) return c.verdict;
      cfg.t_end *= 2.0;
    }
    throw NotConverged("find_mu_star: probe at mu=" + std::to_string(mu) +
                       " stayed Undetermined after extending the horizon");
  };

  if (probe(mu_lo) != Verdict::Vanishing)
    throw BadBracket("find_mu_star: mu_lo=" + std::to_string(mu_lo) + " does not vanish");
  if (probe(mu_hi) != Verdict::Spreading)
    throw BadBracket("find_mu_star: mu_hi=" + std::to_string(mu_hi) + " does not spread");

  double a = mu_lo;
  double b = mu_hi;
  const double stop = 1e-2 * mu_hi;
  while (b - a >= stop) {
    ++out.iterations;
    const double mid = 0.5 * (a + b);
    (probe(mid) == Verdict::Vanishing ? a : b) = mid;
  }
  out.bracket_lo = a;
  out.bracket_hi = b;
  out.mu_star = 0.5 * (a + b);
  out.transcript_monotone = transcript_monotone(out.transcript);
  return out;
}

std::vector<ClauseResult> dichotomy_check(const Trajectory& traj, const Classification& cls,
                                          double L_star, const std::vector<LambdaAtTime>& lyap,
                                          double tolerance) {
  std::vector<ClauseResult> report;
  if (cls.verdict == Verdict::Undetermined || traj.summaries.empty()) return report;

  if (cls.verdict == Verdict::Vanishing) {
    const double w = traj.final_row().width();
    const double bound = 2.0 * L_star + tolerance;
    report.push_back({"vanishing: final width <= 2 L* + tol", w <= bound, w, bound});
  } else {
    const double w = cls.evidence.max_width;
    report.push_back({"spreading: max width > 2 L*", w > 2.0 * L_star, w, 2.0 * L_star});
    if (!lyap.empty() && lyap.front().t == traj.summaries.front().t &&
        lyap.front().estimate.lambda > 0.0) {
      const double w0 = traj.summaries.front().width();
      const double bound = 2.0 * L_star - tolerance;
      report.push_back({"spreading with lambda(0) > 0: initial width >= 2 L* - tol",
                        w0 >= bound, w0, bound});
    }
  }

  if (lyap.size() >= 2) {
    // Largest drop between consecutive lambda(t), measured against CI widths.
    double worst = 0.0;
    double allowance = 0.0;
    bool ok = true;
    for (std::size_t k = 1; k < lyap.size(); ++k) {
      const auto& p = lyap[k - 1].estimate;
      const auto& q = lyap[k].estimate;
      const double drop = p.lambda - q.lambda;
      const double allow = 2.0 * std::max(p.ci_width(), q.ci_width());
      if (drop - allow > worst - allowance) {
        worst = drop;
        allowance = allow;
      }
      ok = ok && drop <= allow;
    }
    report.push_back({"lambda(t) nondecreasing within CI", ok, worst, allowance});
  }
  return report;
}

}  // namespace wnv
