#include "bap/oracle.hpp"

#include "bap/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace bap {

namespace {

double candidate_tol(const HalfSpace& h, const Point& y) {
  return kFeasibilityTol * std::max({1.0, std::fabs(h.offset()), std::sqrt(h.normal_sq()) * y.norm()});
}

bool feasible(const Polyhedron& p, const std::vector<std::size_t>& rows, const Point& y) {
  return std::all_of(rows.begin(), rows.end(),
                     [&](std::size_t i) { return residual(p[i], y) <= candidate_tol(p[i], y); });
}

bool lex_less(const Point& lhs, const Point& rhs) {
  return std::lexicographical_compare(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
}

}  // namespace

Point exact_project(const Polyhedron& p, const Point& x) {
  require_dimension(x, p.dim(), "point");
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!p[i].is_trivial()) rows.push_back(i);
  if (rows.size() > kMaxEnumeratedConstraints)
    throw CapacityError("exact projection enumerates at most " + std::to_string(kMaxEnumeratedConstraints) +
                        " constraints, got " + std::to_string(rows.size()));
  if (feasible(p, rows, x)) return x;

  const auto d = static_cast<int>(p.dim());
  const std::uint32_t subsets = 1u << rows.size();
  Point best;
  double best_sq = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd c;
  Eigen::VectorXd r;
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    const int k = std::popcount(mask);
    if (k > d) continue;
    c.resize(k, d);
    r.resize(k);
    int row = 0;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (!(mask & (1u << j))) continue;
      const HalfSpace& h = p[rows[j]];
      c.row(row) = h.normal().transpose();
      r[row] = h.normal().dot(x) - h.offset();
      ++row;
    }
    const Eigen::VectorXd step = c.completeOrthogonalDecomposition().solve(r);
    Point y = x - step;
    if (!feasible(p, rows, y)) continue;
    const double sq = step.squaredNorm();
    const double slack = best.size() ? 1e-15 * std::max(1.0, best_sq) : 0.0;
    if (best.size() == 0 || sq < best_sq - slack || (sq <= best_sq + slack && lex_less(y, best))) {
      if (sq < best_sq) best_sq = sq;
      best = std::move(y);
    }
  }
  if (best.size() == 0) throw InputError("no feasible point found; the polyhedron appears to be empty");
  return best;
}

Eigen::VectorXd nnls(const Eigen::MatrixXd& m, const Eigen::VectorXd& y, double tol) {
  const Eigen::Index k = m.cols();
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(k);
  std::vector<bool> passive(static_cast<std::size_t>(k), false);
  const double scale = std::max(1.0, m.norm() * y.norm());

  auto solve_passive = [&]() {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < k; ++j)
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    Eigen::MatrixXd sub(m.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) sub.col(static_cast<Eigen::Index>(j)) = m.col(idx[j]);
    const Eigen::VectorXd s_sub = sub.completeOrthogonalDecomposition().solve(y);
    Eigen::VectorXd s = Eigen::VectorXd::Zero(k);
    for (std::size_t j = 0; j < idx.size(); ++j) s[idx[j]] = s_sub[static_cast<Eigen::Index>(j)];
    return s;
  };

  for (Eigen::Index outer = 0; outer < 3 * k + 3; ++outer) {
    const Eigen::VectorXd w = m.transpose() * (y - m * mu);
    Eigen::Index best = -1;
    double best_w = tol * scale;
    for (Eigen::Index j = 0; j < k; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w[j] > best_w) {
        best_w = w[j];
        best = j;
      }
    }
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;

    for (Eigen::Index inner = 0; inner < 3 * k + 3; ++inner) {
      const Eigen::VectorXd s = solve_passive();
      double alpha = 1.0;
      bool feasible_step = true;
      for (Eigen::Index j = 0; j < k; ++j) {
        if (passive[static_cast<std::size_t>(j)] && s[j] <= 0.0) {
          feasible_step = false;
          alpha = std::min(alpha, mu[j] / (mu[j] - s[j]));
        }
      }
      if (feasible_step) {
        mu = s;
        break;
      }
      mu += alpha * (s - mu);
      for (Eigen::Index j = 0; j < k; ++j) {
        if (passive[static_cast<std::size_t>(j)] && mu[j] <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          mu[j] = 0.0;
        }
      }
    }
  }
  return mu;
}

NormalConeFit normal_cone_fit(const Polyhedron& p, const Point& point, const Point& direction,
                              double active_tol) {
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const HalfSpace& h = p[i];
    if (h.is_trivial()) continue;
    const double scale = std::max({1.0, std::fabs(h.offset()), std::sqrt(h.normal_sq()) * point.norm()});
    if (residual(h, point) >= -active_tol * scale) active.push_back(i);
  }
  NormalConeFit fit;
  if (active.empty()) {
    fit.defect = direction.norm();
    return fit;
  }
  Eigen::MatrixXd m(p.dim(), static_cast<Eigen::Index>(active.size()));
  for (std::size_t j = 0; j < active.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = p[active[j]].normal();
  const Eigen::VectorXd mu = nnls(m, direction);
  fit.defect = (m * mu - direction).norm();
  for (std::size_t j = 0; j < active.size(); ++j) fit.multipliers.push_back({active[j], mu[static_cast<Eigen::Index>(j)]});
  return fit;
}

PairCheck certify_pair(const Polyhedron& a_set, const Polyhedron& b_set, const Point& a, const Point& b,
                       double tol) {
  const double residual = std::max({(a - exact_project(a_set, b)).norm(), (b - exact_project(b_set, a)).norm(),
                                    infeasibility(a_set, a), infeasibility(b_set, b)});
  return {residual, residual <= tol};
}

BapCertificate cheney_goldstein(const Polyhedron& a_set, const Polyhedron& b_set, const Point& start,
                                std::uint64_t max_iters, double tol, double certificate_tol) {
  if (a_set.dim() != b_set.dim()) throw InputError("A and B live in different dimensions");
  require_dimension(start, a_set.dim(), "start point");

  BapCertificate cert;
  // Iterates live in A from the first one on; only then is the distance monotone.
  Point a = exact_project(a_set, start);
  Point b = exact_project(b_set, a);
  cert.distance_history.push_back((a - b).norm());
  for (std::uint64_t t = 0; t < max_iters; ++t) {
    Point next = exact_project(a_set, b);
    const double step = (next - a).norm();
    a = std::move(next);
    b = exact_project(b_set, a);
    cert.distance_history.push_back((a - b).norm());
    cert.iterations = t + 1;
    if (step < tol) {
      cert.converged = true;
      break;
    }
  }

  cert.a_star = a;
  cert.b_star = b;
  cert.displacement = a - b;
  cert.distance = cert.displacement.norm();
  const NormalConeFit fit_a = normal_cone_fit(a_set, a, b - a);
  const NormalConeFit fit_b = normal_cone_fit(b_set, b, a - b);
  cert.multipliers_a = fit_a.multipliers;
  cert.multipliers_b = fit_b.multipliers;
  cert.normal_cone_defect = std::max(fit_a.defect, fit_b.defect);
  const PairCheck check = certify_pair(a_set, b_set, a, b, certificate_tol);
  cert.residual = check.residual;
  cert.certified = cert.converged && check.certified;
  return cert;
}

}  // namespace bap
