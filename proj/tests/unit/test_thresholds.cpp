#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wnv/errors.hpp"
#include "wnv/thresholds.hpp"

using namespace wnv;
using doctest::Approx;

namespace {

const Mat2 kFrozen{{{-0.1, 0.528}, {1.92, -0.029}}};
const Diffusivities kD{3.0, 0.125};

// det(A0 - k diag(D)) = 0 solved for the positive k, then L = pi / (2 sqrt(k)).
double analytic_L_star() {
  const double a = kD[0] * kD[1];
  const double b = -(kFrozen[0][0] * kD[1] + kFrozen[1][1] * kD[0]);
  const double c = kFrozen[0][0] * kFrozen[1][1] - kFrozen[0][1] * kFrozen[1][0];
  const double k = (-b + std::sqrt(b * b - 4 * a * c)) / (2 * a);
  return std::numbers::pi / (2.0 * std::sqrt(k));
}

LyapunovConfig quick() {
  LyapunovConfig c;
  c.J = 96;
  c.dt = 0.02;
  c.horizon = 150.0;
  c.tol = 2e-2;
  return c;
}

SolverConfig short_run(double t_end, int J = 80) {
  SolverConfig c;
  c.J = J;
  c.t_end = t_end;
  return c;
}

Trajectory run(double h0, double mu, double amp_u, double amp_v, double t_end) {
  ModelSpec s = default_paper_spec();
  s.h0 = h0;
  s.mu = mu;
  return simulate(s, InitialData::cosine(amp_u, amp_v), short_run(t_end));
}

}  // namespace

TEST_CASE("analytic threshold for the frozen reference matrix") {
  CHECK(analytic_L_star() == Approx(1.276).epsilon(1e-3));
  CHECK(lyapunov_constant_oracle(kFrozen, analytic_L_star(), kD) == Approx(0.0).scale(1.0));
}

TEST_CASE("find_L_star recovers the analytic root") {
  const LStarResult r =
      find_L_star(LinearizationMatrix::constant(kFrozen), kD, 0.5, 3.0, quick());
  CHECK(std::abs(r.L_star - analytic_L_star()) < 1e-2);
  CHECK(r.bracket_lo <= r.L_star);
  CHECK(r.L_star <= r.bracket_hi);
  CHECK(r.transcript.size() >= 2);
  CHECK(r.iterations > 0);
}

TEST_CASE("find_L_star takes the worst case over shifts") {
  const ModelSpec s = default_paper_spec();
  const LinearizationMatrix mat = linearization(s);
  const LyapunovConfig c = quick();
  const LStarResult single = find_L_star(mat, {s.D1, s.D2}, 0.5, 3.0, c, {0.0});
  const LStarResult several = find_L_star(mat, {s.D1, s.D2}, 0.5, 3.0, c, {-5.0, 0.0, 5.0});
  CHECK(several.L_star >= single.L_star - 1e-2);
}

TEST_CASE("find_L_star rejects bad input") {
  const auto decay = LinearizationMatrix::constant({{{-1.0, 0.0}, {0.0, -1.0}}});
  CHECK_THROWS_AS(find_L_star(decay, kD, 0.5, 3.0, quick()), BadBracket);
  CHECK_THROWS_AS(find_L_star(decay, kD, 3.0, 0.5, quick()), std::invalid_argument);
  CHECK_THROWS_AS(find_L_star(decay, kD, 0.5, 3.0, quick(), {}), std::invalid_argument);
}

TEST_CASE("classify") {
  SUBCASE("zero data vanish") {
    const Classification c = classify(run(1.0, 0.1, 0.0, 0.0, 5.0), 1.28);
    CHECK(c.verdict == Verdict::Vanishing);
    CHECK(c.evidence.window_norm_peak == 0.0);
  }
  SUBCASE("wide initial domain spreads") {
    const Classification c = classify(run(2.0, 0.1, 0.1, 2.0, 10.0), 1.28);
    CHECK(c.verdict == Verdict::Spreading);
    CHECK(c.evidence.max_width > 4.0);
  }
  SUBCASE("short ambiguous run is undetermined") {
    const Classification c = classify(run(1.0, 0.1, 0.1, 2.0, 2.0), 1.28);
    CHECK(c.verdict == Verdict::Undetermined);
  }
  SUBCASE("failed runs are undetermined") {
    Trajectory t = run(2.0, 0.1, 0.1, 2.0, 2.0);
    t.status = RunStatus::step_floor;
    CHECK(classify(t, 1.28).verdict == Verdict::Undetermined);
    CHECK(classify(Trajectory{}, 1.28).verdict == Verdict::Undetermined);
  }
}

TEST_CASE("dichotomy report") {
  const Trajectory sp = run(2.0, 0.1, 0.1, 2.0, 10.0);
  const Classification c = classify(sp, 1.28);
  const auto report = dichotomy_check(sp, c, 1.28, {});
  REQUIRE(report.size() == 1);
  CHECK(report[0].pass);

  Classification undecided;
  CHECK(dichotomy_check(sp, undecided, 1.28, {}).empty());
}

TEST_CASE("transcript monotonicity") {
  using V = Verdict;
  CHECK(transcript_monotone({{0.1, V::Vanishing}, {0.5, V::Spreading}, {0.3, V::Vanishing}}));
  CHECK_FALSE(transcript_monotone({{0.1, V::Spreading}, {0.5, V::Vanishing}}));
  CHECK(transcript_monotone({}));
}

TEST_CASE("find_mu_star bracket checks") {
  ModelSpec s = default_paper_spec();
  s.h0 = 2.0;
  // A domain already wider than 2 L* spreads for every mu.
  CHECK_THROWS_AS(find_mu_star(s, InitialData::cosine(0.1, 2.0), 0.1, 0.2, short_run(10.0), 1.28),
                  BadBracket);
  CHECK_THROWS_AS(find_mu_star(s, InitialData::cosine(0.1, 2.0), 0.2, 0.1, short_run(10.0), 1.28),
                  std::invalid_argument);
}

TEST_CASE("find_mu_star bisection on a coarse grid") {
  ModelSpec s = default_paper_spec();
  s.h0 = 0.6;
  const MuStarResult r =
      find_mu_star(s, InitialData::cosine(0.1, 2.0), 0.1, 2.0, short_run(300.0, 80), 1.28);
  CHECK(r.bracket_lo < r.bracket_hi);
  CHECK(r.bracket_hi - r.bracket_lo <= 1e-2 * 2.0 + 1e-12);
  CHECK(r.mu_star > r.bracket_lo);
  CHECK(r.mu_star < r.bracket_hi);
  CHECK(r.transcript_monotone);
  CHECK(r.transcript.size() >= 2);
}
