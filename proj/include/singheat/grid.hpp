#pragma once

// Uniform 1-D grids, sampled fields and the conservative operator
// (A v)_i = [h_{i+1/2}(v_{i+1} - v_i) - h_{i-1/2}(v_i - v_{i-1})] / dx^2.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace singheat {

enum class Boundary { dirichlet_zero, periodic };
enum class FaceRule { arithmetic, harmonic };

/// Uniform grid on [a, b] with n nodes. A periodic grid identifies node n-1
/// with node 0 and stores n-1 values.
class Grid {
 public:
  Grid(double a, double b, std::size_t n, Boundary boundary = Boundary::dirichlet_zero);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  std::size_t nodes() const noexcept { return n_; }
  Boundary boundary() const noexcept { return boundary_; }
  double dx() const noexcept { return dx_; }
  double length() const noexcept { return b_ - a_; }

  /// Number of stored values: n, or n-1 when periodic.
  std::size_t size() const noexcept { return boundary_ == Boundary::periodic ? n_ - 1 : n_; }
  /// Number of cell faces carrying a coefficient.
  std::size_t faces() const noexcept { return n_ - 1; }

  double x(std::size_t i) const noexcept { return a_ + static_cast<double>(i) * dx_; }

  /// Same interval with (n-1)*factor + 1 nodes; old nodes are a subset of the new ones.
  Grid refined(std::size_t factor) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double a_;
  double b_;
  std::size_t n_;
  Boundary boundary_;
  double dx_;
};

class GridField {
 public:
  explicit GridField(Grid grid);  // zeros
  GridField(Grid grid, std::vector<double> values);

  static GridField sample(const Grid& grid, const std::function<double(double)>& fn);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

  double min() const;
  double max() const;
  bool all_finite() const;

  GridField& operator+=(const GridField& other);
  GridField& operator-=(const GridField& other);
  GridField& operator*=(double s);

  friend bool operator==(const GridField&, const GridField&) = default;

 private:
  Grid grid_;
  std::vector<double> values_;
};

GridField operator+(GridField lhs, const GridField& rhs);
GridField operator-(GridField lhs, const GridField& rhs);
GridField operator*(double s, GridField f);

/// Discrete L2 inner product sum_i f_i g_i dx.
double inner(const GridField& f, const GridField& g);
/// sqrt(sum_i f_i^2 dx)
double l2_norm(const GridField& f);

/// Divergence-form diffusion operator with coefficients on cell faces.
/// For DirichletZero the boundary values of the argument are treated as 0 and
/// the boundary rows of the result are 0, so the operator is symmetric on the
/// full vector.
class DiffusionOperator {
 public:
  /// Face values from nodal h. Throws ErrorKind::positivity unless h > 0.
  static DiffusionOperator build(const GridField& h, FaceRule rule = FaceRule::arithmetic);
  /// Face values given directly; nonnegative faces are accepted (a zero
  /// operator is useful for testing the forced solver).
  static DiffusionOperator from_faces(Grid grid, std::vector<double> faces);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> faces() const noexcept { return faces_; }

  GridField apply(const GridField& v) const;
  void apply(std::span<const double> v, std::span<double> out) const;

  /// -<A v, v> = sum over faces of h_f ((v_{i+1} - v_i)/dx)^2 dx
  double dissipation(std::span<const double> v) const;

 private:
  DiffusionOperator(Grid grid, std::vector<double> faces);

  Grid grid_;
  std::vector<double> faces_;
};

/// Face coefficient from two adjacent node values.
double face_value(double left, double right, FaceRule rule);

}  // namespace singheat
