#include "wnv/reproduce.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "wnv/errors.hpp"

namespace wnv {

namespace {

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Classification run_case(const RunConfig& base, double h0, double mu, double L_star,
                        RunStatus& status) {
  ModelSpec spec = base.model;
  spec.h0 = h0;
  spec.mu = mu;
  SolverConfig solver = base.solver;
  solver.output_times.clear();
  solver.probe_points.clear();
  const Trajectory traj = simulate(spec, base.init.data, solver);
  status = traj.status;
  return classify(traj, L_star, base.run.classify);
}

}  // namespace

std::vector<PaperCase> paper_cases() {
  return {
      {"fig1a", 2.0, 0.1, Verdict::Spreading},  {"fig1b", 1.0, 0.1, Verdict::Spreading},
      {"fig1c", 0.6, 0.1, Verdict::Vanishing},  {"fig1d", 0.5, 0.1, Verdict::Vanishing},
      {"fig2a", 0.6, 0.2, Verdict::Spreading},  {"fig2b", 0.6, 0.1, Verdict::Vanishing},
  };
}

bool Reproduction::verdicts_match() const {
  for (const auto& c : cases)
    if (c.cls.verdict != c.spec.expected) return false;
  return !cases.empty();
}

Reproduction reproduce_paper(const RunConfig& base, std::ostream* log) {
  Reproduction r;
  auto say = [&](const std::string& s) {
    if (log) *log << s << std::endl;
  };

  if (base.run.L_star > 0.0) {
    r.L_star = base.run.L_star;
  } else {
    say("locating L* on [" + g(base.run.L_lo) + ", " + g(base.run.L_hi) + "] over " +
        std::to_string(base.run.shifts.size()) + " shifts");
    r.lstar = find_L_star(linearization(base.model), {base.model.D1, base.model.D2},
                          base.run.L_lo, base.run.L_hi, base.lyapunov, base.run.shifts);
    r.L_star = r.lstar.L_star;
    r.L_star_computed = true;
  }
  say("L* = " + g(r.L_star));

  for (const auto& c : paper_cases()) {
    CaseOutcome out;
    out.spec = c;
    out.cls = run_case(base, c.h0, c.mu, r.L_star, out.status);
    say(c.name + ": h0=" + g(c.h0) + " mu=" + g(c.mu) + " -> " +
        std::string(to_string(out.cls.verdict)) + " (width " + g(out.cls.evidence.final_width) +
        ")");
    r.cases.push_back(out);
  }

  // Threshold in h0 at the shared mu of the first four cases.
  double vanish = 0.0, spread = 1e300;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& c = r.cases[k];
    if (c.cls.verdict == Verdict::Vanishing) vanish = std::max(vanish, c.spec.h0);
    if (c.cls.verdict == Verdict::Spreading) spread = std::min(spread, c.spec.h0);
  }
  r.h0_bracket_found = vanish > 0.0 && spread < 1e300 && vanish < spread;
  r.h0_vanish = vanish;
  r.h0_spread = spread < 1e300 ? spread : 0.0;

  // mu bracket at the fixed h0 from the last two cases.
  const CaseOutcome& hi_case = r.cases[4];
  const CaseOutcome& lo_case = r.cases[5];
  r.fixed_h0 = hi_case.spec.h0;
  double mu_lo = lo_case.spec.mu;
  double mu_hi = hi_case.spec.mu;
  r.mu_pair_brackets = lo_case.cls.verdict == Verdict::Vanishing &&
                       hi_case.cls.verdict == Verdict::Spreading;
  if (lo_case.cls.verdict != Verdict::Vanishing) {
    r.mu_note = "mu=" + g(mu_lo) + " does not vanish at h0=" + g(r.fixed_h0) + "; no bracket";
    return r;
  }
  if (!r.mu_pair_brackets) {
    // Expand upward until a spreading mu is found.
    Verdict v = hi_case.cls.verdict;
    for (int k = 0; k < 8 && v != Verdict::Spreading; ++k) {
      if (v == Verdict::Vanishing) mu_lo = mu_hi;
      mu_hi *= 2.0;
      RunStatus st;
      const Classification c = run_case(base, r.fixed_h0, mu_hi, r.L_star, st);
      v = c.verdict;
      r.expansion.push_back({mu_hi, v, base.solver.t_end, c.evidence.final_width});
      say("expand: mu=" + g(mu_hi) + " -> " + std::string(to_string(v)));
    }
    if (v != Verdict::Spreading) {
      r.mu_note = "no spreading mu found up to " + g(mu_hi);
      return r;
    }
    r.mu_note = "shipped pair (" + g(lo_case.spec.mu) + ", " + g(hi_case.spec.mu) +
                ") is not a bracket; expanded to (" + g(mu_lo) + ", " + g(mu_hi) + ")";
  }

  ModelSpec spec = base.model;
  spec.h0 = r.fixed_h0;
  SolverConfig solver = base.solver;
  solver.output_times.clear();
  solver.probe_points.clear();
  try {
    r.mu_star = find_mu_star(spec, base.init.data, mu_lo, mu_hi, solver, r.L_star,
                             base.run.classify);
    r.mu_star_found = true;
    say("mu* in (" + g(r.mu_star.bracket_lo) + ", " + g(r.mu_star.bracket_hi) + ")");
  } catch (const NotConverged& e) {
    r.mu_note += (r.mu_note.empty() ? "" : "; ") + std::string(e.what());
  } catch (const BadBracket& e) {
    r.mu_note += (r.mu_note.empty() ? "" : "; ") + std::string(e.what());
  }
  return r;
}

std::string render_summary(const Reproduction& r) {
  std::ostringstream o;
  char line[200];
  std::snprintf(line, sizeof line, "%-6s %6s %6s  %-12s %-12s %12s %12s\n", "case", "h0", "mu",
                "verdict", "expected", "final_width", "max_width");
  o << line;
  for (const auto& c : r.cases) {
    std::snprintf(line, sizeof line, "%-6s %6.3g %6.3g  %-12s %-12s %12.6g %12.6g%s\n",
                  c.spec.name.c_str(), c.spec.h0, c.spec.mu,
                  std::string(to_string(c.cls.verdict)).c_str(),
                  std::string(to_string(c.spec.expected)).c_str(), c.cls.evidence.final_width,
                  c.cls.evidence.max_width, c.cls.verdict == c.spec.expected ? "" : "  MISMATCH");
    o << line;
  }
  o << "\nL* (lambda zero crossing" << (r.L_star_computed ? ", computed" : ", from config")
    << "): " << g(r.L_star);
  if (r.L_star_computed)
    o << " in [" << g(r.lstar.bracket_lo) << ", " << g(r.lstar.bracket_hi) << "]";
  o << "\n";
  if (r.h0_bracket_found)
    o << "half-width threshold from verdicts at mu=0.1: (" << g(r.h0_vanish) << ", "
      << g(r.h0_spread) << ")\n";
  else
    o << "half-width threshold from verdicts at mu=0.1: no bracket\n";
  o << "mu pair at h0=" << g(r.fixed_h0) << " brackets mu*: " << (r.mu_pair_brackets ? "yes" : "no")
    << "\n";
  if (r.mu_star_found)
    o << "mu* at h0=" << g(r.fixed_h0) << ": (" << g(r.mu_star.bracket_lo) << ", "
      << g(r.mu_star.bracket_hi) << "), " << r.mu_star.iterations << " bisections, transcript "
      << (r.mu_star.transcript_monotone ? "monotone" : "NOT monotone") << "\n";
  if (!r.mu_note.empty()) o << "note: " << r.mu_note << "\n";
  return o.str();
}

}  // namespace wnv
