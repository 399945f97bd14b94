#pragma once

#include <span>
#include <vector>

namespace singheat {

/// LU factorization (Thomas algorithm, no pivoting) of a tridiagonal matrix.
/// lower[i] is the (i, i-1) entry, upper[i] the (i, i+1) entry; lower[0] and
/// upper[n-1] are ignored. Throws ErrorKind::singular_system on a zero pivot.
class TridiagonalFactor {
 public:
  TridiagonalFactor(std::span<const double> lower, std::span<const double> diag,
                    std::span<const double> upper);

  std::size_t size() const noexcept { return inv_pivot_.size(); }
  void solve(std::span<double> rhs) const;  // in place

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> inv_pivot_;
};

/// Periodic tridiagonal matrix: as above, plus lower[0] as the (0, n-1) corner
/// and upper[n-1] as the (n-1, 0) corner. Solved by a Sherman-Morrison
/// rank-one correction of a TridiagonalFactor.
class CyclicTridiagonalFactor {
 public:
  CyclicTridiagonalFactor(std::span<const double> lower, std::span<const double> diag,
                          std::span<const double> upper);

  void solve(std::span<double> rhs) const;

 private:
  static TridiagonalFactor reduced(std::span<const double> lower, std::span<const double> diag,
                                   std::span<const double> upper, double gamma);

  double gamma_;
  double corner_lower_;  // (0, n-1)
  double corner_upper_;  // (n-1, 0)
  TridiagonalFactor base_;
  std::vector<double> z_;
  double z_denominator_;
};

}  // namespace singheat
