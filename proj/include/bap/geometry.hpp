#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <vector>

namespace bap {

/// A point (or vector) in d-dimensional Euclidean space.
using Point = Eigen::VectorXd;

/// Default absolute tolerance on constraint residuals.
inline constexpr double kFeasibilityTol = 1e-9;

/// Build a point from a coordinate list.
Point make_point(std::span<const double> coords);
Point make_point(std::initializer_list<double> coords);

bool is_finite(const Point& x);

/// The closed half-space {x : <normal, x> <= offset}.
///
/// The normal is stored exactly as given (no normalization). A trivial
/// half-space stands for the whole space; it is used to pad constraint lists
/// to a common length and projects as the identity.
class HalfSpace {
 public:
  /// Throws InvalidConstraintError on a zero or non-finite normal, or a
  /// non-finite offset.
  HalfSpace(Point normal, double offset);

  static HalfSpace whole_space(Eigen::Index dim);

  const Point& normal() const noexcept { return normal_; }
  double offset() const noexcept { return offset_; }
  bool is_trivial() const noexcept { return trivial_; }
  Eigen::Index dim() const noexcept { return normal_.size(); }
  /// ||normal||^2, cached at construction.
  double normal_sq() const noexcept { return normal_sq_; }

  friend bool operator==(const HalfSpace& lhs, const HalfSpace& rhs);

 private:
  HalfSpace() = default;

  Point normal_;
  double offset_ = 0.0;
  double normal_sq_ = 0.0;
  bool trivial_ = false;
};

/// Finite intersection of half-spaces. The order of the list is kept as
/// given: it defines the cyclic control order of the sweeps.
class Polyhedron {
 public:
  /// Throws InputError when the list is empty or dimensions disagree.
  explicit Polyhedron(std::vector<HalfSpace> halfspaces);

  const std::vector<HalfSpace>& halfspaces() const noexcept { return halfspaces_; }
  const HalfSpace& operator[](std::size_t i) const { return halfspaces_[i]; }
  std::size_t size() const noexcept { return halfspaces_.size(); }
  Eigen::Index dim() const noexcept { return halfspaces_.front().dim(); }
  /// Number of non-trivial members.
  std::size_t constraint_count() const noexcept;

  /// Copy with whole-space members appended until the list has `count` entries.
  Polyhedron padded_to(std::size_t count) const;

  friend bool operator==(const Polyhedron& lhs, const Polyhedron& rhs) = default;

 private:
  std::vector<HalfSpace> halfspaces_;
};

/// Signed violation <c, x> - offset; <= 0 iff x lies in h.
double residual(const HalfSpace& h, const Point& x);

/// Metric projection onto h: x - max(0, residual) / ||c||^2 * c.
Point project_halfspace(const HalfSpace& h, const Point& x);

/// Projection onto the bounding hyperplane {<c, x> = offset}.
/// Throws InvalidConstraintError for a trivial half-space.
Point project_hyperplane(const HalfSpace& h, const Point& x);

/// True iff every member residual is <= tol.
bool contains(const Polyhedron& p, const Point& x, double tol = kFeasibilityTol);

/// Largest member residual clipped at zero (0 when x is feasible).
double infeasibility(const Polyhedron& p, const Point& x);

/// Throws InputError unless x has dimension `dim` and finite coordinates.
void require_dimension(const Point& x, Eigen::Index dim, const char* what);

}  // namespace bap
