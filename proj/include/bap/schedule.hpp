#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bap {

/// Closed-form rule for the relaxation parameters lambda_n, n >= 1.
struct LambdaRule {
  enum class Kind { harmonic, constant, geometric };
  Kind kind = Kind::harmonic;
  /// constant: the value in (0, 1]; geometric: the ratio r in (0, 1), lambda_n = r^n.
  double parameter = 0.0;

  friend bool operator==(const LambdaRule&, const LambdaRule&) = default;
};

/// Relaxation sequence lambda_1, lambda_2, ... (1-based).
///
/// An optional explicit table supplies lambda_1..lambda_T; the rule covers
/// n > T. The plain harmonic schedule lambda_n = 1/(n+1) is the default.
struct LambdaSchedule {
  std::vector<double> table;
  LambdaRule rule;

  static LambdaSchedule harmonic() { return {}; }
  static LambdaSchedule constant(double value);
  static LambdaSchedule geometric(double ratio);
  /// Table entries may be 0 here (degenerate probes); run configs require (0, 1].
  static LambdaSchedule tabulated(std::vector<double> values, LambdaRule tail);

  bool is_harmonic() const noexcept { return table.empty() && rule.kind == LambdaRule::Kind::harmonic; }

  /// log prod_{from < n <= to} (1 - lambda_n). Counts are reals so that the
  /// astronomically long sweeps of late schedules stay representable; -inf
  /// when some factor vanishes.
  double log_survival(double from, double to) const;
  /// prod_{from < n <= to} (1 - lambda_n); telescoped for the harmonic rule.
  double survival(double from, double to) const;

  friend bool operator==(const LambdaSchedule&, const LambdaSchedule&) = default;
};

/// lambda_n. Throws IndexError for n == 0.
double lambda(const LambdaSchedule& s, std::uint64_t n);

/// Sweep lengths n_0, n_1, ... (0-based, non-decreasing, >= 1).
struct SweepSchedule {
  enum class Kind { geometric_floor, linear, table };
  Kind kind = Kind::geometric_floor;
  double base = 1.1;        ///< geometric_floor: n_k = floor(base^k), base > 1
  double slope = 1.0;       ///< linear: n_k = max(1, floor(slope * k + intercept))
  double intercept = 0.0;
  std::vector<std::uint64_t> values;  ///< table: n_k = values[k]

  static SweepSchedule geometric_floor(double base = 1.1);
  static SweepSchedule linear(double slope = 1.0, double intercept = 0.0);
  static SweepSchedule tabulated(std::vector<std::uint64_t> values);

  friend bool operator==(const SweepSchedule&, const SweepSchedule&) = default;
};

/// n_k. The geometric kind is evaluated exactly: the base is read as the
/// decimal it prints as (1.1 -> 11/10) and floor(p^k / q^k) is taken in
/// integer arithmetic. Throws CapacityError if n_k exceeds 2^63, IndexError
/// past the end of a table.
std::uint64_t sweep_length(const SweepSchedule& s, std::uint64_t k);

/// n_k as a real, without the 64-bit cap (used by the Z-bound estimate).
double sweep_length_real(const SweepSchedule& s, std::uint64_t k);

struct ScheduleCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct LambdaDiagnostics {
  std::vector<ScheduleCheck> checks;
  bool all_passed() const;
};

struct LambdaCheckOptions {
  /// Minimum growth of sum lambda_n across the last decade of the horizon.
  double growth_threshold = 1.0;
  /// Maximum growth of sum |lambda_n - lambda_{n+period}| across the last decade.
  double flatness_tolerance = 1e-3;
};

/// Finite-horizon surrogates of the three limit conditions on lambda:
/// lambda_n -> 0, sum lambda_n = inf, sum |lambda_n - lambda_{n+period}| < inf.
LambdaDiagnostics validate_lambda(const LambdaSchedule& s, std::uint64_t period, std::uint64_t horizon,
                                  const LambdaCheckOptions& options = {});

/// max_{k0 <= k0_max} sum_{k0 < k <= k_horizon} prod_{n_{k0} < n <= n_k} (1 - lambda_n).
/// Throws InputError unless k_horizon > k0_max.
double z_bound_estimate(const LambdaSchedule& ls, const SweepSchedule& ss, std::uint64_t k0_max,
                        std::uint64_t k_horizon);

struct ZBoundProfile {
  std::vector<double> sums;  ///< one entry per k0 = 0..k0_max
  std::uint64_t argmax = 0;
  double max = 0.0;
};

ZBoundProfile z_bound_profile(const LambdaSchedule& ls, const SweepSchedule& ss, std::uint64_t k0_max,
                              std::uint64_t k_horizon);

std::string to_string(LambdaRule::Kind kind);
std::string to_string(SweepSchedule::Kind kind);

}  // namespace bap
