#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "wnv/lyapunov.hpp"

using namespace wnv;
using doctest::Approx;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

const Mat2 kFrozen{{{-0.1, 0.528}, {1.92, -0.029}}};
const Diffusivities kD{3.0, 0.125};

LyapunovConfig quick(double horizon = 200.0) {
  LyapunovConfig c;
  c.J = 128;
  c.dt = 0.02;
  c.horizon = horizon;
  return c;
}

}  // namespace

TEST_CASE("constant oracle on hand-computed matrices") {
  CHECK(lyapunov_constant_oracle({{{-1.0, 1.0}, {1.0, -1.0}}}, kInf, {0.0, 0.0}) ==
        Approx(0.0).epsilon(1e-14));
  CHECK(lyapunov_constant_oracle({{{-1.0, 0.0}, {0.0, -2.0}}}, kPi / 2.0, {1.0, 1.0}) ==
        Approx(-2.0));
  CHECK(lyapunov_constant_oracle({{{-1.0, 2.0}, {3.0, -2.0}}}, kInf, {1.0, 1.0}) == Approx(1.0));
  CHECK_THROWS_AS(lyapunov_constant_oracle({{{-1.0, -1.0}, {1.0, -1.0}}}, 1.0, {1.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("decoupled decay rate") {
  const auto mat = LinearizationMatrix::constant({{{-1.0, 0.0}, {0.0, -1.0}}});
  const LyapunovEstimate e = lyapunov_exponent(mat, 1.0, {1.0, 1.0}, quick(100.0));
  CHECK(e.lambda == Approx(-1.0 - kPi * kPi / 4.0).epsilon(2e-3));
  CHECK(e.renorm_count > 0);
  CHECK(e.cone_preserved);
}

TEST_CASE("estimator agrees with the constant oracle") {
  for (double L : {0.8, 1.5, 3.0}) {
    CAPTURE(L);
    const LyapunovEstimate e =
        lyapunov_exponent(LinearizationMatrix::constant(kFrozen), L, kD, quick(400.0));
    CHECK(std::abs(e.lambda - lyapunov_constant_oracle(kFrozen, L, kD)) < 2e-3);
    CHECK(e.converged);
    CHECK(e.ci_low <= e.ci_high);
  }
}

TEST_CASE("estimator does not depend on the start profile") {
  const auto mat = LinearizationMatrix::constant(kFrozen);
  const LyapunovConfig c = quick(300.0);
  std::vector<double> skewed(2 * (c.J - 1));
  for (std::size_t i = 0; i < skewed.size(); ++i) skewed[i] = 1.0 + 0.01 * static_cast<double>(i);
  const double a = lyapunov_exponent(mat, 1.5, kD, c).lambda;
  const double b = lyapunov_exponent(mat, 1.5, kD, c, skewed).lambda;
  CHECK(std::abs(a - b) < 2e-3);
  CHECK_THROWS_AS(lyapunov_exponent(mat, 1.5, kD, c, std::vector<double>(3, 1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(lyapunov_exponent(mat, 0.0, kD, c), std::invalid_argument);
}

TEST_CASE("sweep is increasing and crosses zero for the reference field") {
  const std::vector<double> Ls{0.5, 1.0, 2.0, 4.0};
  const auto sweep = lambda_sweep(LinearizationMatrix::constant(kFrozen), kD, Ls, quick());
  REQUIRE(sweep.size() == Ls.size());
  for (std::size_t k = 1; k < sweep.size(); ++k) {
    CHECK_FALSE(sweep[k].monotonicity_violation);
    CHECK(sweep[k].estimate.lambda > sweep[k - 1].estimate.lambda);
  }
  CHECK(sweep.front().estimate.lambda < 0.0);
  CHECK(sweep.back().estimate.lambda > 0.0);
  CHECK_THROWS(lambda_sweep(LinearizationMatrix::constant(kFrozen), kD, {2.0, 1.0}, quick()));
}

TEST_CASE("time-dependent field gives a finite estimate between its frozen extremes") {
  const ModelSpec s = default_paper_spec();
  const LyapunovEstimate e = lyapunov_exponent(linearization(s), 2.0, {s.D1, s.D2}, quick(300.0));
  CHECK(std::isfinite(e.lambda));
  CHECK(e.cone_preserved);
  // Larger domains grow faster.
  const LyapunovEstimate big = lyapunov_exponent(linearization(s), 6.0, {s.D1, s.D2}, quick(300.0));
  CHECK(big.lambda > e.lambda);
}

TEST_CASE("lambda_of_t follows the trajectory width") {
  ModelSpec s = default_paper_spec();
  s.h0 = 1.0;
  SolverConfig sc;
  sc.J = 60;
  sc.t_end = 2.0;
  const Trajectory tr = simulate(s, InitialData::cosine(0.1, 2.0), sc);
  const auto lt = lambda_of_t(s, tr, {0.0, 2.0}, quick(100.0));
  REQUIRE(lt.size() == 2);
  CHECK(lt[0].half_width == Approx(1.0));
  CHECK(lt[1].half_width > lt[0].half_width);
  CHECK(lt[0].center == Approx(0.0));
  CHECK_THROWS(lambda_of_t(s, tr, {3.0}, quick()));
}
