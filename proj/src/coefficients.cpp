#include "wnv/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace wnv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double longest_period(const std::vector<TemporalHarmonic>& harmonics) {
  double period = 0.0;
  for (const auto& h : harmonics) period = std::max(period, kTwoPi / h.frequency);
  return period;
}

}  // namespace

double TemporalHarmonic::factor(double t) const {
  const double arg = frequency * t + phase;
  return 1.0 + amplitude * (kind == HarmonicKind::cosine ? std::cos(arg) : std::sin(arg));
}

double eval_profile(ProfileKind kind, double x) {
  const double denom = 1.0 + x * x;
  switch (kind) {
    case ProfileKind::constant_one:
      return 1.0;
    case ProfileKind::ratio2_cos:
      return (2.0 + x) / denom * std::cos(x);
    case ProfileKind::ratio1_cos:
      return (1.0 + x) / denom * std::cos(x);
    case ProfileKind::ratio2_sin:
      return (2.0 + x) / denom * std::sin(x);
    case ProfileKind::ratio1_sin:
      return (1.0 + x) / denom * std::sin(x);
  }
  return 0.0;
}

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::constant_one: return "constant_one";
    case ProfileKind::ratio2_cos: return "ratio2_cos";
    case ProfileKind::ratio1_cos: return "ratio1_cos";
    case ProfileKind::ratio2_sin: return "ratio2_sin";
    case ProfileKind::ratio1_sin: return "ratio1_sin";
  }
  return "?";
}

ProfileKind profile_from_string(std::string_view name) {
  for (auto k : {ProfileKind::constant_one, ProfileKind::ratio2_cos, ProfileKind::ratio1_cos,
                 ProfileKind::ratio2_sin, ProfileKind::ratio1_sin}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown spatial profile '" + std::string(name) + "'");
}

std::string_view to_string(HarmonicKind kind) {
  return kind == HarmonicKind::cosine ? "cos" : "sin";
}

HarmonicKind harmonic_from_string(std::string_view name) {
  if (name == "cos" || name == "cosine") return HarmonicKind::cosine;
  if (name == "sin" || name == "sine") return HarmonicKind::sine;
  throw std::invalid_argument("unknown harmonic kind '" + std::string(name) + "'");
}

CoefficientField CoefficientField::make(double base, std::vector<TemporalHarmonic> harmonics,
                                        double spatial_amp, ProfileKind profile, double floor) {
  if (!std::isfinite(base) || !std::isfinite(spatial_amp))
    throw std::invalid_argument("coefficient field: non-finite base or spatial amplitude");
  if (!(floor > 0.0)) throw std::invalid_argument("coefficient field: floor must be positive");
  for (const auto& h : harmonics) {
    if (!(h.frequency > 0.0) || !std::isfinite(h.frequency))
      throw std::invalid_argument("coefficient field: harmonic frequency must be positive");
    if (!(std::abs(h.amplitude) < 1.0))
      throw std::invalid_argument("coefficient field: harmonic amplitude must satisfy |a| < 1");
    if (!std::isfinite(h.phase))
      throw std::invalid_argument("coefficient field: non-finite harmonic phase");
  }

  CoefficientField f;
  f.base_ = base;
  f.harmonics_ = std::move(harmonics);
  f.spatial_amp_ = spatial_amp;
  f.profile_ = profile;
  f.floor_ = floor;

  // Profiles decay like 1/|x| so a window of a few dozen units covers the extremes.
  const double t_span = f.harmonics_.empty() ? 1.0 : 4.0 * longest_period(f.harmonics_);
  if (sampled_minimum(f, 50.0, t_span, 401, 401) < floor)
    throw std::invalid_argument("coefficient field: value drops below the positivity floor");
  return f;
}

CoefficientField CoefficientField::constant(double value, double floor) {
  return make(value, {}, 0.0, ProfileKind::constant_one, floor);
}

double CoefficientField::temporal_factor(double t) const {
  double prod = 1.0;
  for (const auto& h : harmonics_) prod *= h.factor(t);
  return prod;
}

double CoefficientField::spatial_term(double x) const {
  return spatial_amp_ == 0.0 ? 0.0 : spatial_amp_ * eval_profile(profile_, x);
}

double CoefficientField::eval(double x, double t) const {
  return std::max(floor_, base_ * temporal_factor(t) + spatial_term(x));
}

CoefficientField CoefficientField::shifted(double tau) const {
  CoefficientField f = *this;
  for (auto& h : f.harmonics_) h.phase = std::remainder(h.phase + h.frequency * tau, kTwoPi);
  return f;
}

double sampled_minimum(const CoefficientField& field, double x_span, double t_span, int n_x,
                       int n_t) {
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_x; ++i) {
    const double x = -x_span + 2.0 * x_span * i / (n_x - 1);
    const double s = field.spatial_term(x);
    for (int k = 0; k < n_t; ++k) {
      const double t = t_span * k / (n_t - 1);
      lo = std::min(lo, field.base() * field.temporal_factor(t) + s);
    }
  }
  return lo;
}

double translation_discrepancy(const CoefficientField& field, double tau) {
  const CoefficientField moved = field.shifted(tau);
  const double t_span =
      field.harmonics().empty() ? 1.0 : std::max(100.0, 4.0 * longest_period(field.harmonics()));
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double x = -4.0 + 2.0 * i;
    for (int k = 0; k < 800; ++k) {
      const double t = t_span * k / 799.0;
      worst = std::max(worst, std::abs(moved.eval(x, t) - field.eval(x, t)));
    }
  }
  return worst;
}

TranslationNumber find_translation_number(const CoefficientField& field, double eps,
                                          double tau_max) {
  TranslationNumber out;
  if (field.harmonics().empty()) {
    // Time-independent fields are invariant under every shift.
    out.tau = std::min(1.0, tau_max);
    out.found = true;
    return out;
  }
  const double step = kTwoPi / field.harmonics().front().frequency;
  for (int n = 1; n * step <= tau_max; ++n) {
    const double tau = n * step;
    const double d = translation_discrepancy(field, tau);
    if (d < eps) {
      out.tau = tau;
      out.discrepancy = d;
      out.found = true;
      return out;
    }
  }
  return out;
}

LinearizationMatrix::LinearizationMatrix(CoefficientField d1, CoefficientField d2,
                                         CoefficientField k12, double c12, CoefficientField k21,
                                         double c21, double c11, double c22)
    : d1_(std::move(d1)),
      d2_(std::move(d2)),
      k12_(std::move(k12)),
      k21_(std::move(k21)),
      c11_(c11),
      c22_(c22),
      c12_(c12),
      c21_(c21) {}

LinearizationMatrix LinearizationMatrix::constant(const Mat2& a0) {
  const auto one = CoefficientField::constant(1.0);
  return LinearizationMatrix(one, one, one, a0[0][1], one, a0[1][0], -a0[0][0], -a0[1][1]);
}

LinearizationMatrix::Parts LinearizationMatrix::temporal_parts(double t) const {
  return {d1_.base() * d1_.temporal_factor(t), d2_.base() * d2_.temporal_factor(t),
          k12_.base() * k12_.temporal_factor(t), k21_.base() * k21_.temporal_factor(t)};
}

LinearizationMatrix::Parts LinearizationMatrix::spatial_parts(double x) const {
  const double xs = x + x_shift_;
  return {d1_.spatial_term(xs), d2_.spatial_term(xs), k12_.spatial_term(xs),
          k21_.spatial_term(xs)};
}

Mat2 LinearizationMatrix::combine(const Parts& temporal, const Parts& spatial) const {
  const double d1 = std::max(d1_.floor(), temporal[0] + spatial[0]);
  const double d2 = std::max(d2_.floor(), temporal[1] + spatial[1]);
  const double k12 = std::max(k12_.floor(), temporal[2] + spatial[2]);
  const double k21 = std::max(k21_.floor(), temporal[3] + spatial[3]);
  return Mat2{{{-c11_ * d1, c12_ * k12}, {c21_ * k21, -c22_ * d2}}};
}

Mat2 LinearizationMatrix::eval(double x, double t) const {
  return combine(temporal_parts(t), spatial_parts(x));
}

LinearizationMatrix LinearizationMatrix::shifted_x(double dx) const {
  LinearizationMatrix m = *this;
  m.x_shift_ += dx;
  return m;
}

LinearizationMatrix LinearizationMatrix::shifted_t(double tau) const {
  LinearizationMatrix m = *this;
  m.d1_ = d1_.shifted(tau);
  m.d2_ = d2_.shifted(tau);
  m.k12_ = k12_.shifted(tau);
  m.k21_ = k21_.shifted(tau);
  return m;
}

}  // namespace wnv
