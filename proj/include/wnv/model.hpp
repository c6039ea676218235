#pragma once

#include <utility>
#include <vector>

#include "wnv/coefficients.hpp"

namespace wnv {

/// Full parameterization of the bird/mosquito free-boundary system.
///
/// Derived coefficients follow the usual nondimensional grouping
///   a1 = alpha1 * beta / N1,  a2 = alpha2 * beta / N1,  d1 = gamma,  d2 = death.
struct ModelSpec {
  double D1 = 3.0;     // bird diffusivity
  double D2 = 0.125;   // mosquito diffusivity
  double N1 = 1.0;     // bird capacity
  double N2 = 20.0;    // mosquito capacity
  double beta = 0.6;   // biting rate
  CoefficientField alpha1;
  CoefficientField alpha2;
  CoefficientField gamma;  // bird recovery rate, d1
  CoefficientField death;  // mosquito death rate, d2
  double mu = 0.1;     // front expansion rate
  double h0 = 1.0;     // initial half-width

  /// Throws std::invalid_argument naming the violated invariant.
  void validate() const;

  double a1(double x, double t) const { return alpha1.eval(x, t) * beta / N1; }
  double a2(double x, double t) const { return alpha2.eval(x, t) * beta / N1; }
  double d1(double x, double t) const { return gamma.eval(x, t); }
  double d2(double x, double t) const { return death.eval(x, t); }

  bool operator==(const ModelSpec&) const = default;
};

struct Reaction {
  double dU = 0.0;
  double dV = 0.0;
};

Reaction reaction(const ModelSpec& spec, double x, double t, double U, double V);

/// Jacobian of the reaction terms at the disease-free state.
Mat2 jacobian_at_zero(const ModelSpec& spec, double x, double t);

LinearizationMatrix linearization(const ModelSpec& spec);

/// Six-dot-one parameter set: D1=3, D2=0.125, N1=1, N2=20, beta=0.6 and the
/// four almost-periodic heterogeneous coefficient fields. mu and h0 keep
/// their defaults (0.1, 1.0) and are meant to be overridden per experiment.
ModelSpec default_paper_spec();

enum class InitialKind { cosine, samples };

/// Initial densities on [-h0, h0]; either cosine bumps A cos(pi x / (2 h0)) or
/// sampled arrays on a uniform grid spanning [-h0, h0].
struct InitialData {
  InitialKind kind = InitialKind::cosine;
  double amp_u = 0.1;
  double amp_v = 2.0;
  std::vector<double> u_samples;
  std::vector<double> v_samples;

  static InitialData cosine(double amp_u, double amp_v);
  static InitialData sampled(std::vector<double> u, std::vector<double> v);

  /// Checks zero endpoints and 0 < U0 <= N1, 0 < V0 <= N2 in the interior.
  /// Zero bumps (amp 0) are accepted as the trivial disease-free datum.
  void validate(const ModelSpec& spec) const;

  /// Values at fixed coordinate y in [-1, 1], x = h0 * y.
  std::pair<double, double> at_y(double y) const;

  bool operator==(const InitialData&) const = default;
};

}  // namespace wnv
