#pragma once

#include "bap/geometry.hpp"
#include "bap/schedule.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace bap {

/// Cyclic control: iteration n (1-based) projects onto list position
/// (n + offset) mod count, positions being 0-based. With the default
/// offset 0 the first iteration uses the second listed half-space; offset -1
/// gives "iteration n -> n-th listed half-space".
struct ControlSequence {
  std::size_t count = 1;
  std::int64_t offset = 0;

  static ControlSequence cyclic(std::size_t count, std::int64_t offset = 0);
  std::size_t position(std::uint64_t n) const;

  friend bool operator==(const ControlSequence&, const ControlSequence&) = default;
};

/// How a sweep is evaluated. Both compute the same recursion.
enum class SweepKernel {
  automatic,        ///< scaled_harmonic when lambda is harmonic, else direct
  direct,           ///< x <- lambda_n a + (1 - lambda_n) P(x), step by step
  scaled_harmonic,  ///< harmonic lambda only; iterates z = (n+1)(x - a) via constraint slacks
};

struct SweepResult {
  Point endpoint;
  /// q_0 .. q_n, filled only when recording.
  std::optional<std::vector<Point>> inner_trace;
  /// Selected half-space position for each iteration, filled only when recording.
  std::vector<std::size_t> projections_used;
};

/// One HLWB step: lambda_n anchor + (1 - lambda_n) P_h(current), where h is
/// the half-space selected by ctrl for iteration n.
Point q_step(const Polyhedron& target, const Point& anchor, const Point& current, std::uint64_t n,
             const LambdaSchedule& ls, const ControlSequence& ctrl);

/// Q_{target,n}(anchor; start): n HLWB steps with lambda_1..lambda_n. n == 0
/// returns start unchanged. No stopping test; exactly n steps are taken.
SweepResult sweep(const Polyhedron& target, const Point& anchor, const Point& start, std::uint64_t n,
                  const LambdaSchedule& ls, const ControlSequence& ctrl, bool record = false,
                  SweepKernel kernel = SweepKernel::automatic);

struct HlwbProjection {
  Point point;
  std::uint64_t iterations = 0;
};

/// Approximates P_target(anchor) by a single long sweep started at `start`.
HlwbProjection hlwb_project(const Polyhedron& target, const Point& anchor, const Point& start,
                            std::uint64_t max_iters, const LambdaSchedule& ls, const ControlSequence& ctrl,
                            SweepKernel kernel = SweepKernel::automatic);

}  // namespace bap
