#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "wnv/coefficients.hpp"
#include "wnv/model.hpp"

using namespace wnv;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("reference fields at the origin") {
  const ModelSpec s = default_paper_spec();
  CHECK(s.death.eval(0.0, 0.0) == Approx(0.029).epsilon(1e-15));
  CHECK(s.alpha1.eval(0.0, 0.0) == Approx(0.88 * 1.56 + 0.088 * 2.0).epsilon(1e-14));
  CHECK(s.alpha1.eval(0.0, 0.0) == Approx(1.5488).epsilon(1e-14));
  // Hand evaluation at a generic point.
  const double x = 1.3, t = 2.7;
  const double ratio1 = (1.0 + x) / (1.0 + x * x);
  CHECK(s.alpha2.eval(x, t) ==
        Approx(0.16 * (1.0 + 0.2 * std::cos(kPi * t / 3.0)) + 0.024 * ratio1 * std::cos(x)));
  CHECK(s.gamma.eval(x, t) ==
        Approx(0.1 * (1.0 + 0.3 * std::sin(t / 3.0)) +
               0.02 * (2.0 + x) / (1.0 + x * x) * std::sin(x)));
}

TEST_CASE("constant field") {
  const auto c = CoefficientField::constant(0.37);
  for (double x : {-40.0, 0.0, 3.3})
    for (double t : {0.0, 1.0, 1e4}) CHECK(c.eval(x, t) == 0.37);
  CHECK(c.is_constant());
  CHECK(c.shifted(12.5).eval(1.0, 2.0) == 0.37);
  CHECK_THROWS_AS(CoefficientField::constant(-1.0), std::invalid_argument);
}

TEST_CASE("construction rejects invalid fields") {
  CHECK_THROWS_AS(CoefficientField::make(1.0, {{1.0, 1.0, HarmonicKind::cosine}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CoefficientField::make(1.0, {{0.5, 0.0, HarmonicKind::cosine}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CoefficientField::make(1.0, {{0.5, -2.0, HarmonicKind::sine}}),
                  std::invalid_argument);
  // Spatial term large enough to drive the field negative.
  CHECK_THROWS_AS(CoefficientField::make(0.01, {}, 1.0, ProfileKind::ratio2_cos),
                  std::invalid_argument);
  CHECK_THROWS_AS(CoefficientField::make(1.0, {}, 0.0, ProfileKind::constant_one, 0.0),
                  std::invalid_argument);
}

TEST_CASE("profiles are bounded by 3") {
  for (auto k : {ProfileKind::constant_one, ProfileKind::ratio2_cos, ProfileKind::ratio1_cos,
                 ProfileKind::ratio2_sin, ProfileKind::ratio1_sin}) {
    double worst = 0.0;
    for (int i = 0; i <= 200000; ++i) {
      const double x = -1000.0 + 0.01 * i;
      worst = std::max(worst, std::abs(eval_profile(k, x)));
    }
    CHECK(worst <= 3.0);
    CHECK(profile_from_string(to_string(k)) == k);
  }
  CHECK_THROWS(profile_from_string("ratio3"));
  CHECK(harmonic_from_string("sin") == HarmonicKind::sine);
  CHECK_THROWS(harmonic_from_string("tan"));
}

TEST_CASE("reference fields stay above the floor") {
  const ModelSpec s = default_paper_spec();
  for (const auto* f : {&s.alpha1, &s.alpha2, &s.gamma, &s.death})
    CHECK(sampled_minimum(*f, 60.0, 200.0, 301, 301) > 0.0);
}

TEST_CASE("time shift") {
  const ModelSpec s = default_paper_spec();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-30.0, 30.0), ut(0.0, 500.0), utau(-50.0, 50.0);

  SUBCASE("zero shift is the identity") {
    for (int i = 0; i < 200; ++i) {
      const double x = ux(rng), t = ut(rng);
      CHECK(s.gamma.shifted(0.0).eval(x, t) == s.gamma.eval(x, t));
    }
  }
  SUBCASE("eval of the shifted field equals eval at t + tau") {
    for (int i = 0; i < 500; ++i) {
      const double x = ux(rng), t = ut(rng), tau = utau(rng);
      CHECK(s.death.shifted(tau).eval(x, t) == Approx(s.death.eval(x, t + tau)).epsilon(1e-12));
    }
  }
  SUBCASE("shifts compose") {
    for (int i = 0; i < 200; ++i) {
      const double x = ux(rng), t = ut(rng), a = utau(rng), b = utau(rng);
      CHECK(s.alpha2.shifted(a).shifted(b).eval(x, t) ==
            Approx(s.alpha2.shifted(a + b).eval(x, t)).epsilon(1e-12));
    }
  }
  SUBCASE("alpha1 is 4 pi periodic") {
    const auto shifted = s.alpha1.shifted(4.0 * kPi);
    for (int i = 0; i < 200; ++i) {
      const double x = ux(rng), t = ut(rng);
      CHECK(std::abs(shifted.eval(x, t) - s.alpha1.eval(x, t)) < 1e-12);
    }
    CHECK(translation_discrepancy(s.alpha1, 4.0 * kPi) < 1e-12);
  }
}

TEST_CASE("translation numbers") {
  const ModelSpec s = default_paper_spec();
  const auto tn = find_translation_number(s.alpha1, 1e-9, 100.0);
  REQUIRE(tn.found);
  CHECK(tn.tau == Approx(4.0 * kPi).epsilon(1e-12));

  // Two incommensurate harmonics: only approximate translations exist.
  const auto two = CoefficientField::make(
      1.0, {{0.3, 1.0, HarmonicKind::cosine}, {0.2, std::numbers::sqrt2, HarmonicKind::sine}});
  const auto approx = find_translation_number(two, 0.1, 2000.0);
  REQUIRE(approx.found);
  CHECK(approx.discrepancy < 0.1);
  CHECK(translation_discrepancy(two, approx.tau) == Approx(approx.discrepancy));
}

TEST_CASE("linearization matrix") {
  SUBCASE("unit constant case") {
    const auto one = CoefficientField::constant(1.0);
    const LinearizationMatrix m(one, one, one, 1.0, one, 1.0);
    const Mat2 a = eval_A(m, 3.0, 4.0);
    CHECK(a[0][0] == -1.0);
    CHECK(a[0][1] == 1.0);
    CHECK(a[1][0] == 1.0);
    CHECK(a[1][1] == -1.0);
  }
  SUBCASE("reference fields at the origin") {
    const ModelSpec s = default_paper_spec();
    const Mat2 a = eval_A(linearization(s), 0.0, 0.0);
    CHECK(a[0][0] == Approx(-s.gamma.eval(0, 0)));
    CHECK(a[0][1] == Approx(s.alpha1.eval(0, 0) * 0.6 / 1.0 * 1.0));
    CHECK(a[1][0] == Approx(s.alpha2.eval(0, 0) * 0.6 / 1.0 * 20.0));
    CHECK(a[1][1] == Approx(-0.029));
  }
  SUBCASE("cooperative with negative diagonal on random samples") {
    const auto m = linearization(default_paper_spec());
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(-100.0, 100.0), ut(0.0, 1000.0);
    bool ok = true;
    for (int i = 0; i < 10000; ++i) {
      const Mat2 a = m.eval(ux(rng), ut(rng));
      ok = ok && a[0][1] > 0.0 && a[1][0] > 0.0 && a[0][0] < 0.0 && a[1][1] < 0.0;
    }
    CHECK(ok);
  }
  SUBCASE("shifts and split evaluation") {
    const auto m = linearization(default_paper_spec());
    const Mat2 a = m.shifted_x(2.5).eval(1.0, 3.0);
    const Mat2 b = m.eval(3.5, 3.0);
    const Mat2 c = m.shifted_t(1.5).eval(1.0, 3.0);
    const Mat2 d = m.eval(1.0, 4.5);
    const Mat2 e = m.combine(m.temporal_parts(3.0), m.spatial_parts(1.0));
    const Mat2 f = m.eval(1.0, 3.0);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        CHECK(a[i][j] == Approx(b[i][j]).epsilon(1e-14));
        CHECK(c[i][j] == Approx(d[i][j]).epsilon(1e-12));
        CHECK(e[i][j] == Approx(f[i][j]).epsilon(1e-14));
      }
  }
}
