#include "bap/schedule.hpp"

#include "bap/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace bap {

namespace {

using boost::multiprecision::cpp_int;

constexpr double kInf = std::numeric_limits<double>::infinity();

double rule_value(const LambdaRule& rule, double n) {
  switch (rule.kind) {
    case LambdaRule::Kind::harmonic:
      return 1.0 / (n + 1.0);
    case LambdaRule::Kind::constant:
      return rule.parameter;
    case LambdaRule::Kind::geometric:
      return std::pow(rule.parameter, n);
  }
  return 0.0;
}

// sum_{from < n <= to} log(1 - lambda_n) for a closed-form rule.
double rule_log_survival(const LambdaRule& rule, double from, double to) {
  if (!(to > from)) return 0.0;
  switch (rule.kind) {
    case LambdaRule::Kind::harmonic:
      return std::log((from + 1.0) / (to + 1.0));
    case LambdaRule::Kind::constant:
      if (rule.parameter >= 1.0) return -kInf;
      return (to - from) * std::log1p(-rule.parameter);
    case LambdaRule::Kind::geometric: {
      const double r = rule.parameter;
      double n = from + 1.0;
      double term = std::pow(r, n);
      double sum = 0.0;
      while (n <= to && term > 1e-18) {
        sum += std::log1p(-term);
        term *= r;
        n += 1.0;
      }
      // log1p(-t) == -t to double precision below 1e-18; sum the geometric tail.
      if (n <= to && term > 0.0) sum -= term * (1.0 - std::pow(r, to - n + 1.0)) / (1.0 - r);
      return sum;
    }
  }
  return 0.0;
}

void check_rule(const LambdaRule& rule) {
  switch (rule.kind) {
    case LambdaRule::Kind::harmonic:
      return;
    case LambdaRule::Kind::constant:
      if (!(rule.parameter > 0.0 && rule.parameter <= 1.0))
        throw InputError("constant lambda must lie in (0, 1]");
      return;
    case LambdaRule::Kind::geometric:
      if (!(rule.parameter > 0.0 && rule.parameter < 1.0))
        throw InputError("geometric lambda ratio must lie in (0, 1)");
      return;
  }
}

// The base as the exact decimal fraction it prints as: 1.1 -> 11/10.
std::pair<cpp_int, cpp_int> decimal_fraction(double base) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, base, std::chars_format::scientific);
  const std::string text(buf, res.ptr);
  const auto e_pos = text.find('e');
  const std::string mantissa = text.substr(0, e_pos);
  long exponent = std::stol(text.substr(e_pos + 1));
  std::string digits;
  long fraction_digits = 0;
  bool after_point = false;
  for (char c : mantissa) {
    if (c == '.') {
      after_point = true;
    } else {
      digits += c;
      if (after_point) ++fraction_digits;
    }
  }
  exponent -= fraction_digits;
  cpp_int num(digits);
  cpp_int den = 1;
  if (exponent >= 0)
    num *= boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(exponent));
  else
    den = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(-exponent));
  return {num, den};
}

cpp_int geometric_floor_exact(double base, std::uint64_t k) {
  const auto [num, den] = decimal_fraction(base);
  const auto e = static_cast<unsigned>(k);
  return boost::multiprecision::pow(num, e) / boost::multiprecision::pow(den, e);
}

void check_sweeps(const SweepSchedule& s) {
  switch (s.kind) {
    case SweepSchedule::Kind::geometric_floor:
      if (!(s.base > 1.0) || !std::isfinite(s.base)) throw InputError("geometric sweep base must be > 1");
      return;
    case SweepSchedule::Kind::linear:
      if (!(s.slope >= 0.0) || !std::isfinite(s.slope) || !std::isfinite(s.intercept))
        throw InputError("linear sweep slope must be finite and >= 0");
      return;
    case SweepSchedule::Kind::table:
      if (s.values.empty()) throw InputError("sweep table is empty");
      for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (s.values[i] == 0) throw InputError("sweep table entries must be >= 1");
        if (i > 0 && s.values[i] < s.values[i - 1]) throw InputError("sweep table must be non-decreasing");
      }
      return;
  }
}

}  // namespace

LambdaSchedule LambdaSchedule::constant(double value) {
  LambdaSchedule s;
  s.rule = {LambdaRule::Kind::constant, value};
  check_rule(s.rule);
  return s;
}

LambdaSchedule LambdaSchedule::geometric(double ratio) {
  LambdaSchedule s;
  s.rule = {LambdaRule::Kind::geometric, ratio};
  check_rule(s.rule);
  return s;
}

LambdaSchedule LambdaSchedule::tabulated(std::vector<double> values, LambdaRule tail) {
  for (double v : values)
    if (!(v >= 0.0 && v <= 1.0)) throw InputError("tabulated lambda values must lie in [0, 1]");
  check_rule(tail);
  LambdaSchedule s;
  s.table = std::move(values);
  s.rule = tail;
  return s;
}

double LambdaSchedule::log_survival(double from, double to) const {
  if (!(to > from)) return 0.0;
  double sum = 0.0;
  const auto table_end = static_cast<double>(table.size());
  if (from < table_end) {
    const auto first = static_cast<std::size_t>(from);  // index of lambda_{from+1}
    const auto last = static_cast<std::size_t>(std::min(to, table_end));
    for (std::size_t i = first; i < last; ++i) {
      if (table[i] >= 1.0) return -kInf;
      sum += std::log1p(-table[i]);
    }
  }
  return sum + rule_log_survival(rule, std::max(from, table_end), to);
}

double LambdaSchedule::survival(double from, double to) const {
  if (!(to > from)) return 1.0;
  if (is_harmonic()) return (from + 1.0) / (to + 1.0);
  return std::exp(log_survival(from, to));
}

double lambda(const LambdaSchedule& s, std::uint64_t n) {
  if (n == 0) throw IndexError("lambda is indexed from 1");
  if (n <= s.table.size()) return s.table[n - 1];
  return rule_value(s.rule, static_cast<double>(n));
}

SweepSchedule SweepSchedule::geometric_floor(double base) {
  SweepSchedule s;
  s.kind = Kind::geometric_floor;
  s.base = base;
  check_sweeps(s);
  return s;
}

SweepSchedule SweepSchedule::linear(double slope, double intercept) {
  SweepSchedule s;
  s.kind = Kind::linear;
  s.slope = slope;
  s.intercept = intercept;
  check_sweeps(s);
  return s;
}

SweepSchedule SweepSchedule::tabulated(std::vector<std::uint64_t> values) {
  SweepSchedule s;
  s.kind = Kind::table;
  s.values = std::move(values);
  check_sweeps(s);
  return s;
}

std::uint64_t sweep_length(const SweepSchedule& s, std::uint64_t k) {
  check_sweeps(s);
  switch (s.kind) {
    case SweepSchedule::Kind::geometric_floor: {
      const cpp_int n = geometric_floor_exact(s.base, k);
      if (n > cpp_int(std::numeric_limits<std::int64_t>::max()))
        throw CapacityError("sweep length n_" + std::to_string(k) + " exceeds 2^63");
      return std::max<std::uint64_t>(1, n.convert_to<std::uint64_t>());
    }
    case SweepSchedule::Kind::linear: {
      const double v = std::floor(s.slope * static_cast<double>(k) + s.intercept);
      if (v >= 9.2e18) throw CapacityError("sweep length n_" + std::to_string(k) + " exceeds 2^63");
      return v < 1.0 ? 1 : static_cast<std::uint64_t>(v);
    }
    case SweepSchedule::Kind::table:
      if (k >= s.values.size())
        throw IndexError("sweep table has " + std::to_string(s.values.size()) + " entries, asked for n_" +
                         std::to_string(k));
      return s.values[k];
  }
  return 1;
}

double sweep_length_real(const SweepSchedule& s, std::uint64_t k) {
  check_sweeps(s);
  switch (s.kind) {
    case SweepSchedule::Kind::geometric_floor:
      return std::max(1.0, geometric_floor_exact(s.base, k).convert_to<double>());
    case SweepSchedule::Kind::linear:
      return std::max(1.0, std::floor(s.slope * static_cast<double>(k) + s.intercept));
    case SweepSchedule::Kind::table:
      return static_cast<double>(sweep_length(s, k));
  }
  return 1.0;
}

bool LambdaDiagnostics::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ScheduleCheck& c) { return c.passed; });
}

LambdaDiagnostics validate_lambda(const LambdaSchedule& s, std::uint64_t period, std::uint64_t horizon,
                                  const LambdaCheckOptions& options) {
  if (period == 0) throw InputError("period must be positive");
  if (horizon < 10) throw InputError("horizon must be at least 10");
  const std::uint64_t decade_start = horizon / 10;

  long double sum = 0.0L, sum_at_decade = 0.0L;
  long double variation = 0.0L, variation_at_decade = 0.0L;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    const double ln = lambda(s, n);
    sum += ln;
    variation += std::fabs(ln - lambda(s, n + period));
    if (n == decade_start) {
      sum_at_decade = sum;
      variation_at_decade = variation;
    }
  }

  LambdaDiagnostics out;
  const double first = lambda(s, 1);
  const double last = lambda(s, horizon);
  {
    std::ostringstream d;
    d << "lambda_1 = " << first << ", lambda_" << horizon << " = " << last;
    out.checks.push_back({"lambda_to_zero", last < first, last, first, d.str()});
  }
  {
    const auto growth = static_cast<double>(sum - sum_at_decade);
    std::ostringstream d;
    d << "partial sum " << static_cast<double>(sum) << " at n = " << horizon << ", grew by " << growth
      << " over (" << decade_start << ", " << horizon << "]";
    out.checks.push_back({"divergent_sum", growth >= options.growth_threshold, growth,
                          options.growth_threshold, d.str()});
  }
  {
    const auto growth = static_cast<double>(variation - variation_at_decade);
    std::ostringstream d;
    d << "sum |lambda_n - lambda_{n+" << period << "}| = " << static_cast<double>(variation)
      << ", grew by " << growth << " over the last decade";
    out.checks.push_back({"bounded_variation", growth <= options.flatness_tolerance, growth,
                          options.flatness_tolerance, d.str()});
  }
  return out;
}

ZBoundProfile z_bound_profile(const LambdaSchedule& ls, const SweepSchedule& ss, std::uint64_t k0_max,
                              std::uint64_t k_horizon) {
  if (k_horizon <= k0_max) throw InputError("k_horizon must exceed k0_max");
  std::vector<double> lengths(k_horizon + 1);
  for (std::uint64_t k = 0; k <= k_horizon; ++k) lengths[k] = sweep_length_real(ss, k);

  ZBoundProfile profile;
  profile.sums.reserve(k0_max + 1);
  for (std::uint64_t k0 = 0; k0 <= k0_max; ++k0) {
    double sum = 0.0;
    for (std::uint64_t k = k0 + 1; k <= k_horizon; ++k) sum += ls.survival(lengths[k0], lengths[k]);
    profile.sums.push_back(sum);
    if (k0 == 0 || sum > profile.max) {
      profile.max = sum;
      profile.argmax = k0;
    }
  }
  return profile;
}

double z_bound_estimate(const LambdaSchedule& ls, const SweepSchedule& ss, std::uint64_t k0_max,
                        std::uint64_t k_horizon) {
  return z_bound_profile(ls, ss, k0_max, k_horizon).max;
}

std::string to_string(LambdaRule::Kind kind) {
  switch (kind) {
    case LambdaRule::Kind::harmonic:
      return "harmonic";
    case LambdaRule::Kind::constant:
      return "constant";
    case LambdaRule::Kind::geometric:
      return "geometric";
  }
  return "?";
}

std::string to_string(SweepSchedule::Kind kind) {
  switch (kind) {
    case SweepSchedule::Kind::geometric_floor:
      return "geometric_floor";
    case SweepSchedule::Kind::linear:
      return "linear";
    case SweepSchedule::Kind::table:
      return "table";
  }
  return "?";
}

}  // namespace bap
