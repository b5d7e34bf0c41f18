#pragma once

#include "bap/geometry.hpp"
#include "bap/hlwb.hpp"
#include "bap/schedule.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bap {

/// Choice of the auxiliary (starting) point of each sweep.
enum class AuxStrategy {
  fixed_anchor,  ///< every sweep starts from a0
  warm_start,    ///< B-sweeps start from the latest b (a0 first), A-sweeps from the latest a
};

std::string to_string(AuxStrategy aux);

struct TracePoint {
  std::int64_t sweep = -1;   ///< producing sweep k; -1 for a0
  std::uint64_t index = 0;   ///< subscript: a_{2k}, b_{2k+1}
  Point point;
  double pair_distance = 0.0;  ///< distance to the latest opposite point; NaN for a0
};

struct SweepRecord {
  std::uint64_t sweep = 0;
  std::uint64_t length = 0;  ///< n_k
  char target = 'B';         ///< 'B' for even sweeps, 'A' for odd ones
  double pair_distance = 0.0;
};

/// Iterates at sweep boundaries: a0, a2, a4, ... and b1, b3, ...
struct IterateTrace {
  std::vector<TracePoint> a_points;
  std::vector<TracePoint> b_points;
  std::vector<SweepRecord> sweeps;
  bool stopped_early = false;

  std::size_t completed_sweeps() const noexcept { return sweeps.size(); }
  Eigen::Index dim() const { return a_points.front().point.size(); }
};

struct RunOptions {
  SweepKernel kernel = SweepKernel::automatic;
  /// Stop once the pair distance changes by less than this between sweeps.
  std::optional<double> stop_tolerance;
};

/// A-HLWB: sweep k (0-based) computes b_{k+1} = Q_{B,n_k}(a_k; a'_k) when k
/// is even and a_{k+1} = Q_{A,n_k}(b_k; b'_k) when k is odd. The shorter
/// half-space list is padded with whole-space members; control offsets are
/// taken from ctrl_a / ctrl_b and their counts follow the padded size.
IterateTrace run(const Polyhedron& a_set, const Polyhedron& b_set, const Point& a0, const LambdaSchedule& ls,
                 const SweepSchedule& ss, AuxStrategy aux, const ControlSequence& ctrl_a,
                 const ControlSequence& ctrl_b, std::uint64_t num_sweeps, const RunOptions& options = {});

struct PairEstimate {
  Point a;
  Point b;
  double distance = 0.0;
};

/// Latest (a, b) pair of the trace. Throws StateError without a b-point.
PairEstimate pair_estimate(const IterateTrace& trace);

}  // namespace bap
