#include "bap/ahlwb.hpp"

#include "bap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bap {

std::string to_string(AuxStrategy aux) {
  return aux == AuxStrategy::fixed_anchor ? "fixed_anchor" : "warm_start";
}

IterateTrace run(const Polyhedron& a_set, const Polyhedron& b_set, const Point& a0, const LambdaSchedule& ls,
                 const SweepSchedule& ss, AuxStrategy aux, const ControlSequence& ctrl_a,
                 const ControlSequence& ctrl_b, std::uint64_t num_sweeps, const RunOptions& options) {
  if (a_set.dim() != b_set.dim())
    throw InputError("A and B live in different dimensions (" + std::to_string(a_set.dim()) + " vs " +
                     std::to_string(b_set.dim()) + ")");
  require_dimension(a0, a_set.dim(), "a0");
  if (num_sweeps == 0) throw InputError("num_sweeps must be at least 1");

  const std::size_t count = std::max(a_set.size(), b_set.size());
  const Polyhedron a_padded = a_set.padded_to(count);
  const Polyhedron b_padded = b_set.padded_to(count);
  const auto cyc_a = ControlSequence::cyclic(count, ctrl_a.offset);
  const auto cyc_b = ControlSequence::cyclic(count, ctrl_b.offset);

  IterateTrace trace;
  trace.a_points.push_back({-1, 0, a0, std::numeric_limits<double>::quiet_NaN()});
  Point a = a0;
  Point b;
  double last_distance = std::numeric_limits<double>::quiet_NaN();

  for (std::uint64_t k = 0; k < num_sweeps; ++k) {
    const std::uint64_t n = sweep_length(ss, k);
    const bool toward_b = k % 2 == 0;
    Point next;
    if (toward_b) {
      const Point& aux_point = (aux == AuxStrategy::warm_start && k > 0) ? b : a0;
      next = sweep(b_padded, a, aux_point, n, ls, cyc_b, false, options.kernel).endpoint;
    } else {
      const Point& aux_point = aux == AuxStrategy::warm_start ? a : a0;
      next = sweep(a_padded, b, aux_point, n, ls, cyc_a, false, options.kernel).endpoint;
    }
    if (!next.allFinite()) throw StateError("non-finite iterate in sweep " + std::to_string(k));

    const double distance = (next - (toward_b ? a : b)).norm();
    const TracePoint tp{static_cast<std::int64_t>(k), k + 1, next, distance};
    if (toward_b) {
      b = std::move(next);
      trace.b_points.push_back(tp);
    } else {
      a = std::move(next);
      trace.a_points.push_back(tp);
    }
    trace.sweeps.push_back({k, n, toward_b ? 'B' : 'A', distance});

    if (options.stop_tolerance && k > 0 && std::fabs(distance - last_distance) < *options.stop_tolerance) {
      trace.stopped_early = k + 1 < num_sweeps;
      break;
    }
    last_distance = distance;
  }
  return trace;
}

PairEstimate pair_estimate(const IterateTrace& trace) {
  if (trace.a_points.empty() || trace.b_points.empty())
    throw StateError("pair estimate needs at least one a-point and one b-point");
  const Point& a = trace.a_points.back().point;
  const Point& b = trace.b_points.back().point;
  return {a, b, (a - b).norm()};
}

}  // namespace bap
