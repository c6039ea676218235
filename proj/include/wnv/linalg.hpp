#pragma once

#include <span>
#include <vector>

#include "wnv/coefficients.hpp"

namespace wnv {

/// Thomas algorithm. lower[0] and upper[n-1] are ignored. Overwrites rhs with
/// the solution; `scratch` must hold n doubles.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs,
                       std::span<double> scratch);

/// Block Thomas for 2x2 blocks where the off-diagonal blocks are diagonal
/// (coupling only through the main-diagonal blocks) and identical on every
/// row. Right-hand sides are interleaved pairs and are solved in place.
class BlockTridiagonal2 {
 public:
  BlockTridiagonal2(std::array<double, 2> off, std::span<const Mat2> diag);

  /// Re-factor with new diagonal blocks (same size and off-diagonal).
  void factor(std::span<const Mat2> diag);
  void solve(std::span<double> rhs) const;
  std::size_t rows() const { return minv_.size(); }

 private:
  std::array<double, 2> off_;
  std::vector<Mat2> minv_;  // inverse of the eliminated diagonal block
  std::vector<Mat2> upper_;  // minv_ times the super-diagonal block
};

Mat2 inverse(const Mat2& a);

/// Larger eigenvalue of a 2x2 matrix with real spectrum.
double principal_eigenvalue(const Mat2& a);

}  // namespace wnv
