#pragma once

#include "bap/geometry.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace bap {

/// Largest number of non-trivial constraints exact_project will enumerate.
inline constexpr std::size_t kMaxEnumeratedConstraints = 20;
inline constexpr double kCertificateTol = 1e-8;

/// Exact metric projection onto a polyhedron by active-set enumeration.
///
/// Every subset S of at most d non-trivial constraints is treated as a set of
/// equalities; x is projected onto that affine set by a minimum-norm solve and
/// the nearest candidate feasible for all constraints wins (ties broken
/// lexicographically). Larger subsets add nothing: a consistent system has the
/// same affine set as one of its row bases. Returns x when x already lies in p.
///
/// Throws CapacityError above kMaxEnumeratedConstraints and InputError when no
/// candidate is feasible (empty polyhedron).
Point exact_project(const Polyhedron& p, const Point& x);

/// min ||M mu - y|| subject to mu >= 0 (Lawson-Hanson active set).
Eigen::VectorXd nnls(const Eigen::MatrixXd& m, const Eigen::VectorXd& y, double tol = 1e-12);

struct ActiveMultiplier {
  std::size_t index = 0;  ///< position in the polyhedron's half-space list
  double value = 0.0;
};

struct NormalConeFit {
  std::vector<ActiveMultiplier> multipliers;
  double defect = 0.0;  ///< || sum mu_i c_i - direction ||
};

/// Expresses `direction` as a nonnegative combination of the normals active at
/// `point` (residual >= -active_tol). A small defect certifies that
/// `direction` lies in the normal cone of p at `point`.
NormalConeFit normal_cone_fit(const Polyhedron& p, const Point& point, const Point& direction,
                              double active_tol = 1e-7);

struct BapCertificate {
  Point a_star;
  Point b_star;
  Point displacement;  ///< a_star - b_star
  double distance = 0.0;
  std::vector<ActiveMultiplier> multipliers_a;  ///< b* - a* in N_A(a*)
  std::vector<ActiveMultiplier> multipliers_b;  ///< a* - b* in N_B(b*)
  double normal_cone_defect = 0.0;
  double residual = 0.0;  ///< certify_pair residual
  bool converged = false;
  bool certified = false;
  std::uint64_t iterations = 0;
  /// ||a_t - P_B(a_t)|| for t = 0..iterations; non-increasing.
  std::vector<double> distance_history;
};

struct PairCheck {
  double residual = 0.0;
  bool certified = false;
};

/// residual = max(||a - P_A(b)||, ||b - P_B(a)||, infeasibility of a in A,
/// infeasibility of b in B); certified iff residual <= tol.
PairCheck certify_pair(const Polyhedron& a_set, const Polyhedron& b_set, const Point& a, const Point& b,
                       double tol = kCertificateTol);

/// Exact alternating projections a <- P_A(P_B(a)), starting from
/// a_0 = P_A(start), until the step drops below tol or max_iters is reached;
/// the final pair is certified.
BapCertificate cheney_goldstein(const Polyhedron& a_set, const Polyhedron& b_set, const Point& start,
                                std::uint64_t max_iters = 100000, double tol = 1e-10,
                                double certificate_tol = kCertificateTol);

}  // namespace bap
