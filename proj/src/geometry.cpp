#include "bap/geometry.hpp"

#include "bap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bap {

Point make_point(std::span<const double> coords) {
  Point x(static_cast<Eigen::Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) x[static_cast<Eigen::Index>(i)] = coords[i];
  return x;
}

Point make_point(std::initializer_list<double> coords) {
  return make_point(std::span<const double>(coords.begin(), coords.size()));
}

bool is_finite(const Point& x) { return x.allFinite(); }

HalfSpace::HalfSpace(Point normal, double offset)
    : normal_(std::move(normal)), offset_(offset) {
  if (normal_.size() == 0) throw InvalidConstraintError("half-space normal has no coordinates");
  if (!normal_.allFinite() || !std::isfinite(offset_))
    throw InvalidConstraintError("half-space coefficients must be finite");
  normal_sq_ = normal_.squaredNorm();
  if (normal_sq_ == 0.0)
    throw InvalidConstraintError("half-space normal is zero");
}

HalfSpace HalfSpace::whole_space(Eigen::Index dim) {
  if (dim <= 0) throw InputError("whole-space padding needs a positive dimension");
  HalfSpace h;
  h.normal_ = Point::Zero(dim);
  h.offset_ = 0.0;
  h.normal_sq_ = 0.0;
  h.trivial_ = true;
  return h;
}

bool operator==(const HalfSpace& lhs, const HalfSpace& rhs) {
  return lhs.trivial_ == rhs.trivial_ && lhs.offset_ == rhs.offset_ &&
         lhs.normal_.size() == rhs.normal_.size() && lhs.normal_ == rhs.normal_;
}

Polyhedron::Polyhedron(std::vector<HalfSpace> halfspaces) : halfspaces_(std::move(halfspaces)) {
  if (halfspaces_.empty()) throw InputError("polyhedron needs at least one half-space");
  const auto d = halfspaces_.front().dim();
  for (std::size_t i = 1; i < halfspaces_.size(); ++i) {
    if (halfspaces_[i].dim() != d)
      throw InputError("half-space " + std::to_string(i) + " has dimension " +
                       std::to_string(halfspaces_[i].dim()) + ", expected " + std::to_string(d));
  }
}

std::size_t Polyhedron::constraint_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(halfspaces_.begin(), halfspaces_.end(),
                                                [](const HalfSpace& h) { return !h.is_trivial(); }));
}

Polyhedron Polyhedron::padded_to(std::size_t count) const {
  auto hs = halfspaces_;
  while (hs.size() < count) hs.push_back(HalfSpace::whole_space(dim()));
  return Polyhedron(std::move(hs));
}

void require_dimension(const Point& x, Eigen::Index dim, const char* what) {
  if (x.size() != dim)
    throw InputError(std::string(what) + " has dimension " + std::to_string(x.size()) +
                     ", expected " + std::to_string(dim));
  if (!x.allFinite()) throw InputError(std::string(what) + " has non-finite coordinates");
}

double residual(const HalfSpace& h, const Point& x) {
  if (x.size() != h.dim())
    throw InputError("dimension mismatch: point " + std::to_string(x.size()) + " vs half-space " +
                     std::to_string(h.dim()));
  if (h.is_trivial()) return -std::numeric_limits<double>::infinity();
  return h.normal().dot(x) - h.offset();
}

Point project_halfspace(const HalfSpace& h, const Point& x) {
  const double r = residual(h, x);
  if (!(r > 0.0)) return x;
  return x - (r / h.normal_sq()) * h.normal();
}

Point project_hyperplane(const HalfSpace& h, const Point& x) {
  if (h.is_trivial()) throw InvalidConstraintError("whole-space half-space has no bounding hyperplane");
  const double r = residual(h, x);
  if (r == 0.0) return x;
  return x - (r / h.normal_sq()) * h.normal();
}

bool contains(const Polyhedron& p, const Point& x, double tol) {
  return std::all_of(p.halfspaces().begin(), p.halfspaces().end(),
                     [&](const HalfSpace& h) { return residual(h, x) <= tol; });
}

double infeasibility(const Polyhedron& p, const Point& x) {
  double worst = 0.0;
  for (const auto& h : p.halfspaces()) worst = std::max(worst, residual(h, x));
  return worst;
}

}  // namespace bap
