#include "bap/harness/experiment.hpp"

#include "bap/errors.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>

namespace bap::harness {

ScheduleReport schedule_report(const RunConfig& cfg, std::uint64_t horizon, std::uint64_t period,
                               std::uint64_t k0_max, std::uint64_t k_horizon) {
  ScheduleReport report;
  report.period = period ? period : std::max(cfg.a_set.size(), cfg.b_set.size());
  report.horizon = horizon;
  report.lambda = validate_lambda(cfg.lambda, report.period, horizon);

  if (cfg.sweeps.kind == SweepSchedule::Kind::table) {
    const auto last = static_cast<std::uint64_t>(cfg.sweeps.values.size()) - 1;
    k_horizon = std::min(k_horizon, last);
    if (k_horizon == 0) return report;
    k0_max = std::min(k0_max, k_horizon - 1);
  }
  report.z_k0_max = k0_max;
  report.z_horizon = k_horizon;
  report.z_bound = z_bound_profile(cfg.lambda, cfg.sweeps, k0_max, k_horizon);
  return report;
}

ExperimentResult run_experiment(const RunConfig& cfg, const ExperimentOptions& options) {
  ExperimentResult result;
  RunOptions run_options = options.run;
  if (cfg.stop_tolerance) run_options.stop_tolerance = cfg.stop_tolerance;

  const auto t0 = std::chrono::steady_clock::now();
  result.trace = run(cfg.a_set, cfg.b_set, cfg.start, cfg.lambda, cfg.sweeps, cfg.aux,
                     ControlSequence::cyclic(cfg.a_set.size(), cfg.control_offset_a),
                     ControlSequence::cyclic(cfg.b_set.size(), cfg.control_offset_b), cfg.num_sweeps, run_options);
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  result.final_pair = pair_estimate(result.trace);

  if (options.with_oracle && cfg.a_set.constraint_count() <= kMaxEnumeratedConstraints &&
      cfg.b_set.constraint_count() <= kMaxEnumeratedConstraints) {
    result.oracle = cheney_goldstein(cfg.a_set, cfg.b_set, cfg.start);
    result.a_to_oracle = (result.final_pair.a - result.oracle->a_star).norm();
    result.b_to_oracle = (result.final_pair.b - result.oracle->b_star).norm();
  } else {
    result.oracle_note = options.with_oracle ? "too many constraints for enumeration" : "disabled";
  }
  if (options.with_schedule_report) result.schedule = schedule_report(cfg, options.lambda_horizon);
  return result;
}

std::string format_point(const Point& x, int precision) {
  std::ostringstream out;
  out << std::setprecision(precision) << '(';
  for (Eigen::Index i = 0; i < x.size(); ++i) out << (i ? ", " : "") << x[i];
  out << ')';
  return out.str();
}

std::string format_schedule_report(const ScheduleReport& report) {
  std::ostringstream out;
  out << "lambda checks (period " << report.period << ", horizon " << report.horizon << "):\n";
  for (const auto& c : report.lambda.checks)
    out << "  " << (c.passed ? "ok  " : "FAIL") << ' ' << std::left << std::setw(18) << c.name << c.detail
        << '\n';
  if (report.z_bound) {
    out << "Z bound estimate (k0 <= " << report.z_k0_max << ", k <= " << report.z_horizon
        << "): " << std::setprecision(8) << report.z_bound->max << " at k0 = " << report.z_bound->argmax;
    out << "; at k0 = " << report.z_k0_max << ": " << report.z_bound->sums.back() << '\n';
  } else {
    out << "Z bound estimate: sweep table too short\n";
  }
  return out.str();
}

std::string format_summary(const RunConfig& cfg, const ExperimentResult& result) {
  std::ostringstream out;
  out << "experiment " << (cfg.name.empty() ? "<unnamed>" : cfg.name) << ": " << result.trace.completed_sweeps()
      << " sweeps (" << to_string(cfg.aux) << ")" << (result.trace.stopped_early ? ", stopped early" : "")
      << ", " << std::setprecision(3) << result.seconds << " s\n";
  out << std::setprecision(10);
  out << "  final a:  " << format_point(result.final_pair.a, 10) << '\n';
  out << "  final b:  " << format_point(result.final_pair.b, 10) << '\n';
  out << "  distance: " << result.final_pair.distance << '\n';
  if (result.oracle) {
    const auto& o = *result.oracle;
    out << "  oracle a*: " << format_point(o.a_star, 10) << "  b*: " << format_point(o.b_star, 10)
        << "  distance " << o.distance << (o.certified ? " (certified" : " (NOT certified")
        << ", residual " << std::setprecision(3) << o.residual << ")\n";
    out << "  |a - a*| = " << result.a_to_oracle << ", |b - b*| = " << result.b_to_oracle << '\n';
  } else {
    out << "  oracle: skipped (" << result.oracle_note << ")\n";
  }
  if (!result.schedule.lambda.checks.empty()) out << format_schedule_report(result.schedule);
  return out.str();
}

}  // namespace bap::harness
