#include "singheat/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "singheat/error.hpp"
#include "singheat/kernels.hpp"

namespace singheat {

Grid::Grid(double a, double b, std::size_t n, Boundary boundary)
    : a_(a), b_(b), n_(n), boundary_(boundary), dx_(0.0) {
  if (!(std::isfinite(a) && std::isfinite(b) && b > a)) {
    std::ostringstream msg;
    msg << "grid requires finite a < b, got a=" << a << " b=" << b;
    throw Error(ErrorKind::invalid_parameter, msg.str());
  }
  if (n < 8)
    throw Error(ErrorKind::invalid_parameter,
                "grid requires at least 8 nodes, got " + std::to_string(n));
  dx_ = (b - a) / static_cast<double>(n - 1);
}

Grid Grid::refined(std::size_t factor) const {
  if (factor == 0) throw Error(ErrorKind::invalid_parameter, "refinement factor must be >= 1");
  return Grid(a_, b_, (n_ - 1) * factor + 1, boundary_);
}

GridField::GridField(Grid grid) : grid_(grid), values_(grid.size(), 0.0) {}

GridField::GridField(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw Error(ErrorKind::invalid_parameter,
                "field has " + std::to_string(values_.size()) + " values, grid expects " +
                    std::to_string(grid_.size()));
  if (!all_finite()) throw Error(ErrorKind::invalid_parameter, "field contains non-finite values");
}

GridField GridField::sample(const Grid& grid, const std::function<double(double)>& fn) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.x(i));
  return GridField(grid, std::move(v));
}

double GridField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double GridField::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool GridField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

namespace {
void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw Error(ErrorKind::invalid_parameter, "fields live on different grids");
}
}  // namespace

GridField& GridField::operator+=(const GridField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridField& GridField::operator-=(const GridField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridField& GridField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

GridField operator+(GridField lhs, const GridField& rhs) { return lhs += rhs; }
GridField operator-(GridField lhs, const GridField& rhs) { return lhs -= rhs; }
GridField operator*(double s, GridField f) { return f *= s; }

double inner(const GridField& f, const GridField& g) {
  require_same_grid(f.grid(), g.grid());
  return kernels::dot(f.values(), g.values()) * f.grid().dx();
}

double l2_norm(const GridField& f) { return std::sqrt(kernels::sum_squares(f.values()) * f.grid().dx()); }

double face_value(double left, double right, FaceRule rule) {
  switch (rule) {
    case FaceRule::arithmetic: return 0.5 * (left + right);
    case FaceRule::harmonic: return 2.0 * left * right / (left + right);
  }
  return 0.5 * (left + right);
}

DiffusionOperator::DiffusionOperator(Grid grid, std::vector<double> faces)
    : grid_(grid), faces_(std::move(faces)) {}

DiffusionOperator DiffusionOperator::build(const GridField& h, FaceRule rule) {
  const auto v = h.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      std::ostringstream msg;
      msg << "coefficient must be positive, h[" << i << "] = " << v[i];
      throw Error(ErrorKind::positivity, msg.str());
    }
  }
  const Grid& g = h.grid();
  std::vector<double> faces(g.faces());
  const std::size_t m = v.size();
  for (std::size_t i = 0; i < faces.size(); ++i) faces[i] = face_value(v[i], v[(i + 1) % m], rule);
  return DiffusionOperator(g, std::move(faces));
}

DiffusionOperator DiffusionOperator::from_faces(Grid grid, std::vector<double> faces) {
  if (faces.size() != grid.faces())
    throw Error(ErrorKind::invalid_parameter, "face array does not match grid");
  for (double f : faces)
    if (!(f >= 0.0) || !std::isfinite(f))
      throw Error(ErrorKind::positivity, "face coefficients must be finite and nonnegative");
  return DiffusionOperator(grid, std::move(faces));
}

GridField DiffusionOperator::apply(const GridField& v) const {
  require_same_grid(grid_, v.grid());
  GridField out(grid_);
  apply(v.values(), out.values());
  return out;
}

void DiffusionOperator::apply(std::span<const double> v, std::span<double> out) const {
  const std::size_t m = grid_.size();
  const double scale = 1.0 / (grid_.dx() * grid_.dx());
  const double* f = faces_.data();
  kernels::active().divergence(f, v.data(), out.data(), m, scale);
  if (grid_.boundary() == Boundary::periodic) {
    out[0] = scale * (f[0] * (v[1] - v[0]) - f[m - 1] * (v[0] - v[m - 1]));
    out[m - 1] = scale * (f[m - 1] * (v[0] - v[m - 1]) - f[m - 2] * (v[m - 1] - v[m - 2]));
  } else {
    // boundary values enter as 0
    out[1] = scale * (f[1] * (v[2] - v[1]) - f[0] * v[1]);
    out[m - 2] = scale * (-f[m - 2] * v[m - 2] - f[m - 3] * (v[m - 2] - v[m - 3]));
    out[0] = 0.0;
    out[m - 1] = 0.0;
  }
}

double DiffusionOperator::dissipation(std::span<const double> v) const {
  const std::size_t m = grid_.size();
  const double inv_dx = 1.0 / grid_.dx();
  const auto& k = kernels::active();
  if (grid_.boundary() == Boundary::periodic) {
    const double d = v[0] - v[m - 1];
    return (k.weighted_diff_squares(faces_.data(), v.data(), m - 1) + faces_[m - 1] * d * d) *
           inv_dx;
  }
  const double first = faces_[0] * v[1] * v[1];
  const double last = faces_[m - 2] * v[m - 2] * v[m - 2];
  return (k.weighted_diff_squares(faces_.data() + 1, v.data() + 1, m - 3) + first + last) *
         inv_dx;
}

}  // namespace singheat
