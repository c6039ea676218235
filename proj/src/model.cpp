#include "wnv/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wnv {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::invalid_argument(std::string(name) + " must be positive (got " +
                                std::to_string(value) + ")");
}

bool all_zero(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

void check_samples(const std::vector<double>& s, double cap, const char* name) {
  if (s.size() < 3) throw std::invalid_argument(std::string(name) + ": need at least 3 samples");
  if (s.front() != 0.0 || s.back() != 0.0)
    throw std::invalid_argument(std::string(name) + " must vanish at x = +-h0");
  if (all_zero(s)) return;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (!(s[i] > 0.0) || s[i] > cap)
      throw std::invalid_argument(std::string(name) + " must lie in (0, capacity] inside (-h0, h0)");
  }
}

}  // namespace

void ModelSpec::validate() const {
  require_positive(D1, "D1");
  require_positive(D2, "D2");
  require_positive(N1, "N1");
  require_positive(N2, "N2");
  require_positive(beta, "beta");
  require_positive(mu, "mu");
  require_positive(h0, "h0");
  // Fields are positivity-checked at construction; re-check on a coarse grid in
  // case they were assembled by hand.
  for (const auto* f : {&alpha1, &alpha2, &gamma, &death}) {
    if (sampled_minimum(*f, 50.0, 100.0, 101, 101) <= 0.0)
      throw std::invalid_argument("coefficient fields must be positive everywhere sampled");
  }
}

Reaction reaction(const ModelSpec& spec, double x, double t, double U, double V) {
  return {spec.a1(x, t) * (spec.N1 - U) * V - spec.d1(x, t) * U,
          spec.a2(x, t) * (spec.N2 - V) * U - spec.d2(x, t) * V};
}

Mat2 jacobian_at_zero(const ModelSpec& spec, double x, double t) {
  return linearization(spec).eval(x, t);
}

LinearizationMatrix linearization(const ModelSpec& spec) {
  // a1 N1 = alpha1 beta, a2 N2 = alpha2 beta N2 / N1
  return LinearizationMatrix(spec.gamma, spec.death, spec.alpha1, spec.beta, spec.alpha2,
                             spec.beta * spec.N2 / spec.N1);
}

ModelSpec default_paper_spec() {
  using HK = HarmonicKind;
  using PK = ProfileKind;
  constexpr double pi = std::numbers::pi;
  ModelSpec s;
  s.D1 = 3.0;
  s.D2 = 0.125;
  s.N1 = 1.0;
  s.N2 = 20.0;
  s.beta = 0.6;
  s.alpha1 = CoefficientField::make(0.88, {{0.56, 0.5, HK::cosine}}, 0.088, PK::ratio2_cos);
  s.alpha2 = CoefficientField::make(0.16, {{0.2, pi / 3.0, HK::cosine}}, 0.024, PK::ratio1_cos);
  s.gamma = CoefficientField::make(0.1, {{0.3, 1.0 / 3.0, HK::sine}}, 0.02, PK::ratio2_sin);
  s.death = CoefficientField::make(0.029, {{0.1, pi / 2.0, HK::sine}}, 0.0016, PK::ratio1_sin);
  s.mu = 0.1;
  s.h0 = 1.0;
  return s;
}

InitialData InitialData::cosine(double amp_u, double amp_v) {
  InitialData d;
  d.kind = InitialKind::cosine;
  d.amp_u = amp_u;
  d.amp_v = amp_v;
  return d;
}

InitialData InitialData::sampled(std::vector<double> u, std::vector<double> v) {
  InitialData d;
  d.kind = InitialKind::samples;
  d.u_samples = std::move(u);
  d.v_samples = std::move(v);
  return d;
}

void InitialData::validate(const ModelSpec& spec) const {
  if (kind == InitialKind::cosine) {
    if (!(amp_u >= 0.0) || amp_u > spec.N1)
      throw std::invalid_argument("initial U amplitude must lie in [0, N1]");
    if (!(amp_v >= 0.0) || amp_v > spec.N2)
      throw std::invalid_argument("initial V amplitude must lie in [0, N2]");
    if ((amp_u == 0.0) != (amp_v == 0.0))
      throw std::invalid_argument("initial data must be both positive or both zero");
    return;
  }
  if (u_samples.size() != v_samples.size())
    throw std::invalid_argument("initial U and V samples must have equal length");
  check_samples(u_samples, spec.N1, "U0");
  check_samples(v_samples, spec.N2, "V0");
  if (all_zero(u_samples) != all_zero(v_samples))
    throw std::invalid_argument("initial data must be both positive or both zero");
}

std::pair<double, double> InitialData::at_y(double y) const {
  if (y <= -1.0 || y >= 1.0) return {0.0, 0.0};
  if (kind == InitialKind::cosine) {
    const double c = std::cos(std::numbers::pi * y / 2.0);
    return {amp_u * c, amp_v * c};
  }
  const double pos = (y + 1.0) / 2.0 * static_cast<double>(u_samples.size() - 1);
  const auto i = std::min(static_cast<std::size_t>(pos), u_samples.size() - 2);
  const double w = pos - static_cast<double>(i);
  return {(1.0 - w) * u_samples[i] + w * u_samples[i + 1],
          (1.0 - w) * v_samples[i] + w * v_samples[i + 1]};
}

}  // namespace wnv
