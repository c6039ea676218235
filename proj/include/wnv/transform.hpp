#pragma once

namespace wnv {

/// Moving interval [g, h] and its edge velocities.
struct FrontGeometry {
  double g = -1.0;
  double h = 1.0;
  double gdot = 0.0;
  double hdot = 0.0;

  double width() const { return h - g; }
  double center() const { return 0.5 * (g + h); }
  bool operator==(const FrontGeometry&) const = default;
};

/// Coefficients of m_yy (times diffusivity) and m_y in the fixed-domain equation
///   m_t - D * a_coef * m_yy + b_coef * m_y = f.
struct MetricTerms {
  double a_coef = 1.0;
  double b_coef = 0.0;
};

// Both maps throw std::domain_error outside [g, h] / [-1, 1] (a relative slack
// of 1e-12 absorbs round-off at the ends).
double x_to_y(const FrontGeometry& geom, double x);
double y_to_x(const FrontGeometry& geom, double y);

MetricTerms metric_terms(const FrontGeometry& geom, double y);

}  // namespace wnv
