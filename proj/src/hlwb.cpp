#include "bap/hlwb.hpp"

#include "bap/errors.hpp"

#include <array>
#include <limits>
#include <string>
#include <type_traits>

namespace bap {

namespace {

void check_inputs(const Polyhedron& target, const Point& anchor, const Point& x, const ControlSequence& ctrl) {
  require_dimension(anchor, target.dim(), "anchor");
  require_dimension(x, target.dim(), "start point");
  if (ctrl.count != target.size())
    throw InputError("control sequence cycles over " + std::to_string(ctrl.count) + " positions but the target has " +
                     std::to_string(target.size()) + " half-spaces");
}

struct Recording {
  std::vector<Point> points;
  std::vector<std::size_t> positions;
};

Point direct_sweep(const Polyhedron& target, const Point& anchor, const Point& start, std::uint64_t n,
                   const LambdaSchedule& ls, const ControlSequence& ctrl, Recording* rec) {
  Point x = start;
  if (rec) rec->points.push_back(x);
  for (std::uint64_t i = 1; i <= n; ++i) {
    const std::size_t pos = ctrl.position(i);
    const HalfSpace& h = target[pos];
    if (!h.is_trivial()) {
      const double r = h.normal().dot(x) - h.offset();
      if (r > 0.0) x.noalias() -= (r / h.normal_sq()) * h.normal();
    }
    const double lam = lambda(ls, i);
    x = lam * anchor + (1.0 - lam) * x;
    if (rec) {
      rec->points.push_back(x);
      rec->positions.push_back(pos);
    }
  }
  return x;
}

// Harmonic lambda_n = 1/(n+1) admits an exact rescaling. With
// z_n = (n+1)(x_n - a) the step becomes a pure projection,
//   z_n = projection of z_{n-1} onto {<c, z> <= n (delta - <c, a>)},
// with no convex combination left. Writing z = z_0 - sum_t alpha_t u_t with
// u_t = c_t / |c_t|^2, only the slacks
//   v_t = <c_t, z> - m_t (delta_t - <c_t, a>)
// (m_t = next iteration visiting slot t) and the multipliers alpha_t need to
// be carried; a step costs O(count), independent of the dimension.
struct ScaledProblem {
  std::size_t count = 0;
  std::vector<std::size_t> order;  // slot t is visited at iterations i with (i - 1) mod count == t
  std::vector<double> gram;        // gram[t * count + s] = <c_s, u_t>
  std::vector<double> shift;       // count * (delta_t - <c_t, a>)
  std::vector<double> slack;
  std::vector<double> alpha;
  std::vector<Point> directions;   // u_t, zero for whole-space slots
};

ScaledProblem prepare_scaled(const Polyhedron& target, const Point& anchor, const Point& start,
                             const ControlSequence& ctrl) {
  ScaledProblem p;
  const std::size_t count = target.size();
  p.count = count;
  p.order.resize(count);
  for (std::size_t t = 0; t < count; ++t) p.order[t] = ctrl.position(t + 1);
  p.gram.assign(count * count, 0.0);
  p.shift.assign(count, 0.0);
  p.slack.assign(count, -std::numeric_limits<double>::infinity());
  p.alpha.assign(count, 0.0);
  p.directions.assign(count, Point::Zero(target.dim()));

  const Point z0 = start - anchor;
  for (std::size_t t = 0; t < count; ++t) {
    const HalfSpace& h = target[p.order[t]];
    if (h.is_trivial()) continue;
    p.directions[t] = h.normal() / h.normal_sq();
    const double s = h.offset() - h.normal().dot(anchor);
    p.shift[t] = static_cast<double>(count) * s;
    p.slack[t] = h.normal().dot(z0) - static_cast<double>(t + 1) * s;
  }
  for (std::size_t t = 0; t < count; ++t) {
    for (std::size_t s = 0; s < count; ++s) {
      const HalfSpace& hs = target[p.order[s]];
      if (hs.is_trivial()) continue;
      p.gram[t * count + s] = hs.normal().dot(p.directions[t]);
    }
  }
  return p;
}

Point scaled_point(const ScaledProblem& p, const Point& anchor, const Point& z0, std::uint64_t i) {
  Point z = z0;
  for (std::size_t t = 0; t < p.count; ++t) z.noalias() -= p.alpha[t] * p.directions[t];
  return anchor + z / (static_cast<double>(i) + 1.0);
}

template <std::size_t kN, bool kRecord>
void scaled_loop(ScaledProblem& p, std::uint64_t n, const Point& anchor, const Point& z0, Recording* rec) {
  using Vec = std::conditional_t<(kN > 0), std::array<double, kN>, std::vector<double>>;
  using Mat = std::conditional_t<(kN > 0), std::array<double, kN * kN>, std::vector<double>>;
  const std::size_t count = kN > 0 ? kN : p.count;

  Vec slack{}, alpha{}, shift{};
  Mat gram{};
  if constexpr (kN == 0) {
    slack = p.slack;
    alpha = p.alpha;
    shift = p.shift;
    gram = p.gram;
  } else {
    std::copy(p.slack.begin(), p.slack.end(), slack.begin());
    std::copy(p.alpha.begin(), p.alpha.end(), alpha.begin());
    std::copy(p.shift.begin(), p.shift.end(), shift.begin());
    std::copy(p.gram.begin(), p.gram.end(), gram.begin());
  }

  std::uint64_t i = 0;
  auto step = [&](std::size_t t) {
    const double r = slack[t];
    if (r > 0.0) {
      alpha[t] += r;
#pragma GCC unroll 8
      for (std::size_t s = 0; s < count; ++s) slack[s] -= r * gram[t * count + s];
    }
    slack[t] -= shift[t];
    if constexpr (kRecord) {
      ++i;
      std::copy(alpha.begin(), alpha.end(), p.alpha.begin());
      rec->points.push_back(scaled_point(p, anchor, z0, i));
      rec->positions.push_back(p.order[t]);
    }
  };

  const std::uint64_t cycles = n / count;
  const std::size_t rest = static_cast<std::size_t>(n % count);
  for (std::uint64_t c = 0; c < cycles; ++c) {
#pragma GCC unroll 8
    for (std::size_t t = 0; t < count; ++t) step(t);
  }
  for (std::size_t t = 0; t < rest; ++t) step(t);

  std::copy(slack.begin(), slack.end(), p.slack.begin());
  std::copy(alpha.begin(), alpha.end(), p.alpha.begin());
}

template <bool kRecord>
void dispatch_scaled(ScaledProblem& p, std::uint64_t n, const Point& anchor, const Point& z0, Recording* rec) {
  switch (p.count) {
    case 1: return scaled_loop<1, kRecord>(p, n, anchor, z0, rec);
    case 2: return scaled_loop<2, kRecord>(p, n, anchor, z0, rec);
    case 3: return scaled_loop<3, kRecord>(p, n, anchor, z0, rec);
    case 4: return scaled_loop<4, kRecord>(p, n, anchor, z0, rec);
    case 5: return scaled_loop<5, kRecord>(p, n, anchor, z0, rec);
    case 6: return scaled_loop<6, kRecord>(p, n, anchor, z0, rec);
    case 7: return scaled_loop<7, kRecord>(p, n, anchor, z0, rec);
    case 8: return scaled_loop<8, kRecord>(p, n, anchor, z0, rec);
    default: return scaled_loop<0, kRecord>(p, n, anchor, z0, rec);
  }
}

Point scaled_sweep(const Polyhedron& target, const Point& anchor, const Point& start, std::uint64_t n,
                   const ControlSequence& ctrl, Recording* rec) {
  ScaledProblem p = prepare_scaled(target, anchor, start, ctrl);
  const Point z0 = start - anchor;
  if (rec) {
    rec->points.push_back(start);
    dispatch_scaled<true>(p, n, anchor, z0, rec);
  } else {
    dispatch_scaled<false>(p, n, anchor, z0, nullptr);
  }
  return scaled_point(p, anchor, z0, n);
}

}  // namespace

ControlSequence ControlSequence::cyclic(std::size_t count, std::int64_t offset) {
  if (count == 0) throw InputError("control sequence needs at least one position");
  return {count, offset};
}

std::size_t ControlSequence::position(std::uint64_t n) const {
  const auto m = static_cast<std::int64_t>(count);
  const std::int64_t shifted = static_cast<std::int64_t>(n % count) + offset % m;
  return static_cast<std::size_t>(((shifted % m) + m) % m);
}

Point q_step(const Polyhedron& target, const Point& anchor, const Point& current, std::uint64_t n,
             const LambdaSchedule& ls, const ControlSequence& ctrl) {
  check_inputs(target, anchor, current, ctrl);
  const double lam = lambda(ls, n);
  const Point projected = project_halfspace(target[ctrl.position(n)], current);
  return lam * anchor + (1.0 - lam) * projected;
}

SweepResult sweep(const Polyhedron& target, const Point& anchor, const Point& start, std::uint64_t n,
                  const LambdaSchedule& ls, const ControlSequence& ctrl, bool record, SweepKernel kernel) {
  check_inputs(target, anchor, start, ctrl);
  if (kernel == SweepKernel::automatic)
    kernel = ls.is_harmonic() ? SweepKernel::scaled_harmonic : SweepKernel::direct;
  if (kernel == SweepKernel::scaled_harmonic && !ls.is_harmonic())
    throw InputError("the scaled kernel requires the harmonic lambda schedule");

  SweepResult result;
  Recording rec;
  Recording* recp = record ? &rec : nullptr;
  if (n == 0) {
    result.endpoint = start;
    if (record) rec.points.push_back(start);
  } else if (kernel == SweepKernel::direct) {
    result.endpoint = direct_sweep(target, anchor, start, n, ls, ctrl, recp);
  } else {
    result.endpoint = scaled_sweep(target, anchor, start, n, ctrl, recp);
  }
  if (record) {
    result.inner_trace = std::move(rec.points);
    result.projections_used = std::move(rec.positions);
  }
  return result;
}

HlwbProjection hlwb_project(const Polyhedron& target, const Point& anchor, const Point& start,
                            std::uint64_t max_iters, const LambdaSchedule& ls, const ControlSequence& ctrl,
                            SweepKernel kernel) {
  if (max_iters == 0) throw InputError("max_iters must be at least 1");
  return {sweep(target, anchor, start, max_iters, ls, ctrl, false, kernel).endpoint, max_iters};
}

}  // namespace bap
