#pragma once

#include "bap/ahlwb.hpp"
#include "bap/harness/config.hpp"
#include "bap/oracle.hpp"
#include "bap/schedule.hpp"

#include <optional>
#include <string>

namespace bap::harness {

struct ScheduleReport {
  LambdaDiagnostics lambda;
  std::uint64_t period = 0;
  std::uint64_t horizon = 0;
  std::optional<ZBoundProfile> z_bound;  ///< absent when the sweep table is too short
  std::uint64_t z_k0_max = 0;
  std::uint64_t z_horizon = 0;
};

struct ExperimentResult {
  IterateTrace trace;
  PairEstimate final_pair;
  std::optional<BapCertificate> oracle;  ///< absent beyond the enumeration capacity or when disabled
  std::string oracle_note;               ///< why the oracle is absent
  double a_to_oracle = 0.0;
  double b_to_oracle = 0.0;
  ScheduleReport schedule;
  double seconds = 0.0;
};

struct ExperimentOptions {
  RunOptions run;
  bool with_oracle = true;
  bool with_schedule_report = true;
  std::uint64_t lambda_horizon = 100000;
};

/// Schedule diagnostics for a config; period defaults to the padded
/// half-space count.
ScheduleReport schedule_report(const RunConfig& cfg, std::uint64_t horizon = 1000000, std::uint64_t period = 0,
                               std::uint64_t k0_max = 30, std::uint64_t k_horizon = 400);

/// Runs A-HLWB for the config and attaches the oracle comparison.
ExperimentResult run_experiment(const RunConfig& cfg, const ExperimentOptions& options = {});

std::string format_point(const Point& x, int precision = 6);
std::string format_summary(const RunConfig& cfg, const ExperimentResult& result);
std::string format_schedule_report(const ScheduleReport& report);

}  // namespace bap::harness
