#include "wnv/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include "wnv/config.hpp"
#include "wnv/errors.hpp"
#include "wnv/io.hpp"
#include "wnv/reproduce.hpp"
#include "wnv/verify.hpp"

namespace wnv {

namespace {

struct Options {
  std::string config_path;
  std::string out_dir;
  std::optional<double> h0, mu, t_end, L, L_lo, L_hi, mu_lo, mu_hi, L_star, horizon, shift;
  std::optional<int> J;
  std::vector<double> L_list;
  std::optional<double> fixed_dt;
  bool quick = false;
};

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

RunConfig load(const Options& o) {
  RunConfig cfg;
  if (!o.config_path.empty()) {
    cfg = load_config(o.config_path);
    load_samples(cfg, fs::path(o.config_path).parent_path().string());
  }
  if (o.h0) cfg.model.h0 = *o.h0;
  if (o.mu) cfg.model.mu = *o.mu;
  if (o.t_end) cfg.solver.t_end = *o.t_end;
  if (o.J) cfg.solver.J = *o.J;
  if (o.L_lo) cfg.run.L_lo = *o.L_lo;
  if (o.L_hi) cfg.run.L_hi = *o.L_hi;
  if (o.mu_lo) cfg.run.mu_lo = *o.mu_lo;
  if (o.mu_hi) cfg.run.mu_hi = *o.mu_hi;
  if (o.L_star) cfg.run.L_star = *o.L_star;
  if (o.horizon) cfg.lyapunov.horizon = *o.horizon;
  if (!o.L_list.empty()) cfg.run.sweep_L = o.L_list;
  // Overrides go through the same validation as the file.
  RunConfig checked = parse_config(render_config(cfg));
  checked.init = cfg.init;
  return checked;
}

fs::path out_dir(const Options& o, const RunConfig& cfg) {
  if (!o.out_dir.empty()) return o.out_dir;
  if (const char* env = std::getenv("WNV_OUT"); env && *env) return env;
  return cfg.run.out_dir;
}

Diffusivities diffusivities(const ModelSpec& m) { return {m.D1, m.D2}; }

double resolve_L_star(const RunConfig& cfg, const fs::path& out) {
  if (cfg.run.L_star > 0.0) return cfg.run.L_star;
  std::cerr << "computing L* (set run.L_star to skip)\n";
  const LStarResult r = find_L_star(linearization(cfg.model), diffusivities(cfg.model),
                                    cfg.run.L_lo, cfg.run.L_hi, cfg.lyapunov, cfg.run.shifts);
  write_lstar_csv(r, out / "lstar_transcript.csv");
  return r.L_star;
}

SolverConfig with_snapshots(const RunConfig& cfg) {
  SolverConfig s = cfg.solver;
  if (s.output_times.empty()) {
    const int n = cfg.run.snapshot_count;
    for (int k = 0; k <= n; ++k) s.output_times.push_back(s.t_end * k / n);
    s.output_times.back() = s.t_end;
  }
  return s;
}

void write_run(const Trajectory& traj, const RunConfig& cfg, const fs::path& out) {
  write_trajectory_csv(traj, out);
  write_text(out / "config.cfg", render_config(cfg));
  write_front_plot(traj, out / "fronts.svg");
  write_norm_plot(traj, out / "norms.svg");
  if (!traj.snapshots.empty()) write_heatmap(traj, out / "heatmap.svg");
  if (!traj.probes.empty()) write_probe_csv(traj, out / "probes.csv");
}

int cmd_simulate(const Options& o) {
  const RunConfig cfg = load(o);
  const fs::path out = out_dir(o, cfg);
  const Trajectory traj = simulate(cfg.model, cfg.init.data, with_snapshots(cfg));
  write_run(traj, cfg, out);
  const SummaryRow& last = traj.final_row();
  std::cout << "status " << to_string(traj.status) << ", accepted " << traj.accepted_steps()
            << ", rejected " << traj.rejected_steps << "\n"
            << "t=" << g(last.t) << " g=" << g(last.g) << " h=" << g(last.h)
            << " supU=" << g(last.sup_u) << " supV=" << g(last.sup_v) << "\n";
  if (cfg.run.L_star > 0.0) {
    const Classification c = classify(traj, cfg.run.L_star, cfg.run.classify);
    std::cout << "verdict " << to_string(c.verdict) << "\n";
  }
  std::cout << "wrote " << out.string() << "\n";
  return traj.status == RunStatus::completed ? kExitOk : kExitNumerical;
}

int cmd_lyapunov(const Options& o) {
  const RunConfig cfg = load(o);
  const fs::path out = out_dir(o, cfg);
  const double L = o.L.value_or(cfg.model.h0);
  const LinearizationMatrix mat = linearization(cfg.model).shifted_x(o.shift.value_or(0.0));
  const LyapunovEstimate e = lyapunov_exponent(mat, L, diffusivities(cfg.model), cfg.lyapunov);
  std::vector<SweepEntry> one{{L, e, false}};
  write_sweep_csv(one, out / "lyapunov.csv");
  std::cout << "L=" << g(L) << " lambda=" << g(e.lambda) << " CI=[" << g(e.ci_low) << ", "
            << g(e.ci_high) << "] renorms=" << e.renorm_count
            << (e.converged ? "" : " (not converged)") << "\n";
  return e.cone_preserved ? kExitOk : kExitNumerical;
}

int cmd_sweep(const Options& o) {
  const RunConfig cfg = load(o);
  const fs::path out = out_dir(o, cfg);
  const auto sweep =
      lambda_sweep(linearization(cfg.model), diffusivities(cfg.model), cfg.run.sweep_L, cfg.lyapunov);
  write_sweep_csv(sweep, out / "sweep.csv");
  write_sweep_plot(sweep, out / "sweep.svg");
  bool ok = true;
  for (const auto& e : sweep) {
    std::cout << "L=" << g(e.L) << " lambda=" << g(e.estimate.lambda)
              << (e.monotonicity_violation ? "  decrease beyond CI" : "") << "\n";
    ok = ok && !e.monotonicity_violation;
  }
  return ok ? kExitOk : kExitVerification;
}

int cmd_find_lstar(const Options& o) {
  const RunConfig cfg = load(o);
  const fs::path out = out_dir(o, cfg);
  const LStarResult r = find_L_star(linearization(cfg.model), diffusivities(cfg.model),
                                    cfg.run.L_lo, cfg.run.L_hi, cfg.lyapunov, cfg.run.shifts);
  write_lstar_csv(r, out / "lstar_transcript.csv");
  std::cout << "L* = " << g(r.L_star) << " in [" << g(r.bracket_lo) << ", " << g(r.bracket_hi)
            << "] after " << r.iterations << " bisections\n";
  return kExitOk;
}

int cmd_find_mustar(const Options& o) {
  const RunConfig cfg = load(o);
  const fs::path out = out_dir(o, cfg);
  const double L_star = resolve_L_star(cfg, out);
  SolverConfig solver = cfg.solver;
  solver.output_times.clear();
  const MuStarResult r = find_mu_star(cfg.model, cfg.init.data, cfg.run.mu_lo, cfg.run.mu_hi,
                                      solver, L_star, cfg.run.classify);
  write_mustar_csv(r, out / "mustar_transcript.csv");
  std::cout << "mu* = " << g(r.mu_star) << " in (" << g(r.bracket_lo) << ", " << g(r.bracket_hi)
            << ") at h0=" << g(cfg.model.h0) << ", transcript "
            << (r.transcript_monotone ? "monotone" : "NOT monotone") << "\n";
  return r.transcript_monotone ? kExitOk : kExitVerification;
}

int cmd_classify(const Options& o) {
  const RunConfig cfg = load(o);
  const fs::path out = out_dir(o, cfg);
  const double L_star = resolve_L_star(cfg, out);
  const Trajectory traj = simulate(cfg.model, cfg.init.data, with_snapshots(cfg));
  write_run(traj, cfg, out);
  const Classification c = classify(traj, L_star, cfg.run.classify);
  const auto lam = lambda_of_t(cfg.model, traj, cfg.run.lambda_times, cfg.lyapunov);
  const auto clauses = dichotomy_check(traj, c, L_star, lam);

  std::ostringstream rep;
  const Evidence& e = c.evidence;
  rep << "verdict " << to_string(c.verdict) << "\n"
      << "L* " << g(L_star) << "\n"
      << "final_width " << g(e.final_width) << "\nmax_width " << g(e.max_width) << "\n"
      << "final_supU " << g(e.final_sup_u) << "\nfinal_supV " << g(e.final_sup_v) << "\n"
      << "window_norm_floor " << g(e.window_norm_floor) << "\nwindow_norm_peak "
      << g(e.window_norm_peak) << "\n"
      << "width_slope " << g(e.width_slope) << "\nnorm_slope " << g(e.norm_slope) << "\n";
  for (const auto& l : lam)
    rep << "lambda(t=" << g(l.t) << ", L=" << g(l.half_width) << ") " << g(l.estimate.lambda)
        << "\n";
  bool ok = true;
  for (const auto& cl : clauses) {
    rep << (cl.pass ? "PASS " : "FAIL ") << cl.clause << " (measured " << g(cl.measured)
        << ", bound " << g(cl.bound) << ")\n";
    ok = ok && cl.pass;
  }
  write_text(out / "classification.txt", rep.str());
  std::cout << rep.str();
  if (traj.status != RunStatus::completed) return kExitNumerical;
  return ok ? kExitOk : kExitVerification;
}

int cmd_verify(const Options& o) {
  const RunConfig cfg = load(o);
  const fs::path out = out_dir(o, cfg);
  std::vector<ConvergenceStudy> studies;
  if (o.fixed_dt) {
    std::vector<std::pair<int, double>> lv{{20, *o.fixed_dt}, {40, *o.fixed_dt}, {80, *o.fixed_dt}};
    studies.push_back(run_study("spatial (fixed dt)", cfg.model, lv, 0.5, true, false));
  } else {
    studies.push_back(spatial_convergence(cfg.model));
  }
  studies.push_back(temporal_convergence(cfg.model));
  studies.push_back(stefan_coupled_convergence(cfg.model));
  write_convergence_csv(studies, out / "convergence.csv");

  std::ostringstream rep;
  bool ok = true;
  auto check = [&](const std::string& name, bool pass, const std::string& detail) {
    rep << (pass ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
    ok = ok && pass;
  };
  for (const auto& s : studies) {
    rep << s.label << "\n";
    for (const auto& r : s.rows)
      rep << "  J=" << r.J << " dt=" << g(r.dt) << " err=" << g(r.error) << " order=" << g(r.order)
          << "\n";
  }
  const double sp = studies[0].min_order();
  const double tm = studies[1].min_order();
  check("spatial order in [1.9, 2.2]", sp >= 1.9 && sp <= 2.2, g(sp));
  check("temporal order in [0.9, 1.1]", tm >= 0.9 && tm <= 1.1, g(tm));
  rep << "INFO combined Stefan order " << g(studies[2].min_order()) << "\n";

  if (!o.quick) {
    SolverConfig solver = cfg.solver;
    solver.t_end = 50.0;
    solver.output_times.clear();
    for (int k = 1; k <= 50; ++k) solver.output_times.push_back(k);
    InitialData upper = InitialData::cosine(std::min(cfg.model.N1, 1.5 * cfg.init.data.amp_u),
                                            std::min(cfg.model.N2, 1.5 * cfg.init.data.amp_v));
    const auto cases = comparison_suite(cfg.model, {{"scaled data", cfg.init.data, upper}}, solver);
    for (const auto& c : cases)
      check("comparison " + c.name, c.pass,
            "front gap " + g(c.worst_front_gap) + ", field gap " + g(c.worst_field_gap));
    const Trajectory traj = simulate(cfg.model, cfg.init.data, solver);
    check("capacity bound", capacity_dominates(cfg.model, traj),
          "max U " + g(traj.highest_u) + ", max V " + g(traj.highest_v));
  }
  write_text(out / "verify_report.txt", rep.str());
  std::cout << rep.str();
  return ok ? kExitOk : kExitVerification;
}

int cmd_reproduce(const Options& o) {
  const RunConfig cfg = load(o);
  const fs::path out = out_dir(o, cfg);
  const Reproduction r = reproduce_paper(cfg, &std::cerr);
  const std::string summary = render_summary(r);
  write_text(out / "summary.txt", summary);
  if (r.L_star_computed) write_lstar_csv(r.lstar, out / "lstar_transcript.csv");
  if (r.mu_star_found) write_mustar_csv(r.mu_star, out / "mustar_transcript.csv");
  std::cout << summary;
  return r.verdicts_match() && r.mu_pair_brackets ? kExitOk : kExitVerification;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Free-boundary vector-borne epidemic solver"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config_path, "Config file")->check(CLI::ExistingFile);
  app.add_option("--out", o.out_dir, "Output directory (default: $WNV_OUT, then run.out_dir)");

  auto* sim = app.add_subcommand("simulate", "Integrate one trajectory and write CSV/SVG");
  auto* lya = app.add_subcommand("lyapunov", "Principal Lyapunov exponent on [-L, L]");
  auto* swp = app.add_subcommand("sweep-lambda", "Lyapunov exponent over run.sweep_L");
  auto* fls = app.add_subcommand("find-lstar", "Bisect the zero crossing of lambda in L");
  auto* fms = app.add_subcommand("find-mustar", "Bisect the spreading threshold in mu");
  auto* cls = app.add_subcommand("classify", "Simulate, classify, and cross-check");
  auto* ver = app.add_subcommand("verify", "Convergence and comparison suites");
  auto* rep = app.add_subcommand("reproduce-paper", "Run the reference experiments");

  for (auto* sub : {sim, lya, swp, fls, fms, cls, ver, rep}) sub->fallthrough();
  for (auto* sub : {sim, cls, fms, rep}) {
    sub->add_option("--h0", o.h0, "Initial half-width");
    sub->add_option("--mu", o.mu, "Front expansion rate");
    sub->add_option("--t-end", o.t_end, "Horizon");
    sub->add_option("--J", o.J, "Grid cells");
  }
  for (auto* sub : {cls, fms, rep}) sub->add_option("--L-star", o.L_star, "Use this L*");
  lya->add_option("--L", o.L, "Half-width (default: model h0)");
  lya->add_option("--shift", o.shift, "Shift of the coefficients in x");
  for (auto* sub : {lya, swp, fls, cls, fms, rep})
    sub->add_option("--horizon", o.horizon, "Lyapunov horizon");
  swp->add_option("--L-list", o.L_list, "Half-widths")->delimiter(',');
  for (auto* sub : {fls, fms, cls, rep}) {
    sub->add_option("--L-lo", o.L_lo, "Lower L bracket");
    sub->add_option("--L-hi", o.L_hi, "Upper L bracket");
  }
  fms->add_option("--mu-lo", o.mu_lo, "Lower mu bracket");
  fms->add_option("--mu-hi", o.mu_hi, "Upper mu bracket");
  ver->add_flag("--quick", o.quick, "Skip the comparison and capacity runs");
  ver->add_option("--fixed-dt", o.fixed_dt, "Spatial study with this fixed dt instead of dt ~ dy^2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sim->parsed()) return cmd_simulate(o);
    if (lya->parsed()) return cmd_lyapunov(o);
    if (swp->parsed()) return cmd_sweep(o);
    if (fls->parsed()) return cmd_find_lstar(o);
    if (fms->parsed()) return cmd_find_mustar(o);
    if (cls->parsed()) return cmd_classify(o);
    if (ver->parsed()) return cmd_verify(o);
    if (rep->parsed()) return cmd_reproduce(o);
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace wnv
