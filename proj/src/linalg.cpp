#include "wnv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wnv {

void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs,
                       std::span<double> scratch) {
  const std::size_t n = diag.size();
  if (n == 0) return;
  double beta = diag[0];
  rhs[0] /= beta;
  for (std::size_t i = 1; i < n; ++i) {
    scratch[i] = upper[i - 1] / beta;
    beta = diag[i] - lower[i] * scratch[i];
    rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / beta;
  }
  for (std::size_t i = n - 1; i > 0; --i) rhs[i - 1] -= scratch[i] * rhs[i];
}

Mat2 inverse(const Mat2& a) {
  const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  if (det == 0.0) throw std::domain_error("singular 2x2 block");
  return Mat2{{{a[1][1] / det, -a[0][1] / det}, {-a[1][0] / det, a[0][0] / det}}};
}

double principal_eigenvalue(const Mat2& a) {
  const double half_trace = 0.5 * (a[0][0] + a[1][1]);
  const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  const double disc = half_trace * half_trace - det;
  return half_trace + std::sqrt(std::max(0.0, disc));
}

BlockTridiagonal2::BlockTridiagonal2(std::array<double, 2> off, std::span<const Mat2> diag)
    : off_(off), minv_(diag.size()), upper_(diag.size()) {
  factor(diag);
}

void BlockTridiagonal2::factor(std::span<const Mat2> diag) {
  const double o0 = off_[0];
  const double o1 = off_[1];
  for (std::size_t i = 0; i < diag.size(); ++i) {
    Mat2 m = diag[i];
    if (i > 0) {
      const Mat2& c = upper_[i - 1];
      m[0][0] -= o0 * c[0][0];
      m[0][1] -= o0 * c[0][1];
      m[1][0] -= o1 * c[1][0];
      m[1][1] -= o1 * c[1][1];
    }
    minv_[i] = inverse(m);
    const Mat2& v = minv_[i];
    upper_[i] = Mat2{{{v[0][0] * o0, v[0][1] * o1}, {v[1][0] * o0, v[1][1] * o1}}};
  }
}

void BlockTridiagonal2::solve(std::span<double> rhs) const {
  const std::size_t n = minv_.size();
  if (n == 0) return;
  for (std::size_t i = 0; i < n; ++i) {
    double b0 = rhs[2 * i];
    double b1 = rhs[2 * i + 1];
    if (i > 0) {
      b0 -= off_[0] * rhs[2 * i - 2];
      b1 -= off_[1] * rhs[2 * i - 1];
    }
    const Mat2& v = minv_[i];
    rhs[2 * i] = v[0][0] * b0 + v[0][1] * b1;
    rhs[2 * i + 1] = v[1][0] * b0 + v[1][1] * b1;
  }
  for (std::size_t i = n - 1; i > 0; --i) {
    const Mat2& c = upper_[i - 1];
    rhs[2 * i - 2] -= c[0][0] * rhs[2 * i] + c[0][1] * rhs[2 * i + 1];
    rhs[2 * i - 1] -= c[1][0] * rhs[2 * i] + c[1][1] * rhs[2 * i + 1];
  }
}

}  // namespace wnv
