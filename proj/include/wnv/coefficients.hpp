#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace wnv {

using Mat2 = std::array<std::array<double, 2>, 2>;

enum class HarmonicKind { cosine, sine };

/// Relative temporal modulation factor (1 + amplitude * trig(frequency * t + phase)).
struct TemporalHarmonic {
  double amplitude = 0.0;
  double frequency = 1.0;
  HarmonicKind kind = HarmonicKind::cosine;
  double phase = 0.0;

  double factor(double t) const;
  bool operator==(const TemporalHarmonic&) const = default;
};

enum class ProfileKind { constant_one, ratio2_cos, ratio1_cos, ratio2_sin, ratio1_sin };

double eval_profile(ProfileKind kind, double x);
std::string_view to_string(ProfileKind kind);
ProfileKind profile_from_string(std::string_view name);
std::string_view to_string(HarmonicKind kind);
HarmonicKind harmonic_from_string(std::string_view name);

/// Scalar coefficient c(x,t) = base * prod(1 + a_i trig(w_i t + p_i)) + spatial_amp * profile(x).
///
/// Construction goes through make(), which checks positivity on a dense
/// (x,t) sample and rejects fields that dip below the floor. Immutable.
class CoefficientField {
 public:
  CoefficientField() = default;

  static CoefficientField make(double base, std::vector<TemporalHarmonic> harmonics = {},
                               double spatial_amp = 0.0,
                               ProfileKind profile = ProfileKind::constant_one,
                               double floor = 1e-6);
  static CoefficientField constant(double value, double floor = 1e-6);

  double eval(double x, double t) const;
  double temporal_factor(double t) const;
  double spatial_term(double x) const;

  /// Field whose eval(x, t) equals this->eval(x, t + tau).
  CoefficientField shifted(double tau) const;

  double base() const { return base_; }
  const std::vector<TemporalHarmonic>& harmonics() const { return harmonics_; }
  double spatial_amp() const { return spatial_amp_; }
  ProfileKind profile() const { return profile_; }
  double floor() const { return floor_; }
  bool is_time_independent() const { return harmonics_.empty(); }
  bool is_constant() const { return harmonics_.empty() && spatial_amp_ == 0.0; }

  bool operator==(const CoefficientField&) const = default;

 private:
  double base_ = 1.0;
  std::vector<TemporalHarmonic> harmonics_;
  double spatial_amp_ = 0.0;
  ProfileKind profile_ = ProfileKind::constant_one;
  double floor_ = 1e-6;
};

/// Minimum of eval over an n_x by n_t grid on [-x_span, x_span] x [0, t_span].
double sampled_minimum(const CoefficientField& field, double x_span, double t_span, int n_x,
                       int n_t);

/// Sup over sampled (x,t) of |eval(x, t + tau) - eval(x, t)|.
double translation_discrepancy(const CoefficientField& field, double tau);

struct TranslationNumber {
  double tau = 0.0;
  double discrepancy = 0.0;
  bool found = false;
};

/// Smallest tau in (0, tau_max] found on multiples of the first harmonic's
/// period whose translation discrepancy is below eps.
TranslationNumber find_translation_number(const CoefficientField& field, double eps,
                                          double tau_max);

/// A(x,t) = [[-c11 d1, c12 k12], [c21 k21, -c22 d2]] with optional shift in x.
class LinearizationMatrix {
 public:
  LinearizationMatrix() = default;
  LinearizationMatrix(CoefficientField d1, CoefficientField d2, CoefficientField k12,
                      double c12, CoefficientField k21, double c21, double c11 = 1.0,
                      double c22 = 1.0);

  static LinearizationMatrix constant(const Mat2& a0);

  Mat2 eval(double x, double t) const;

  // Split evaluation for grid sweeps: the time part is shared by all nodes and
  // the space part is fixed for a static grid.
  using Parts = std::array<double, 4>;
  Parts temporal_parts(double t) const;
  Parts spatial_parts(double x) const;
  Mat2 combine(const Parts& temporal, const Parts& spatial) const;

  LinearizationMatrix shifted_x(double dx) const;
  LinearizationMatrix shifted_t(double tau) const;
  double x_shift() const { return x_shift_; }

 private:
  CoefficientField d1_, d2_, k12_, k21_;
  double c11_ = 1.0;
  double c22_ = 1.0;
  double c12_ = 0.0;
  double c21_ = 0.0;
  double x_shift_ = 0.0;
};

inline Mat2 eval_A(const LinearizationMatrix& mat, double x, double t) { return mat.eval(x, t); }

}  // namespace wnv
