#include "wnv/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wnv {

namespace {

void require_width(const FrontGeometry& geom) {
  if (!(geom.h > geom.g)) throw std::domain_error("front geometry: width h - g must be positive");
}

}  // namespace

double x_to_y(const FrontGeometry& geom, double x) {
  require_width(geom);
  const double slack = 1e-12 * std::max(1.0, std::abs(geom.h) + std::abs(geom.g));
  if (x < geom.g - slack || x > geom.h + slack)
    throw std::domain_error("x_to_y: position outside [g, h]");
  return (2.0 * x - (geom.h + geom.g)) / (geom.h - geom.g);
}

double y_to_x(const FrontGeometry& geom, double y) {
  require_width(geom);
  if (y < -1.0 - 1e-12 || y > 1.0 + 1e-12) throw std::domain_error("y_to_x: y outside [-1, 1]");
  // Convex-combination form hits g and h exactly at y = -1 and y = 1.
  return 0.5 * (1.0 - y) * geom.g + 0.5 * (1.0 + y) * geom.h;
}

MetricTerms metric_terms(const FrontGeometry& geom, double y) {
  require_width(geom);
  if (y < -1.0 - 1e-12 || y > 1.0 + 1e-12)
    throw std::domain_error("metric_terms: y outside [-1, 1]");
  const double w = geom.h - geom.g;
  return {4.0 / (w * w), -(y * (geom.hdot - geom.gdot) + (geom.hdot + geom.gdot)) / w};
}

}  // namespace wnv
