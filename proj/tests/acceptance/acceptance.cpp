// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "bap/ahlwb.hpp"
#include "bap/geometry.hpp"
#include "bap/harness/config.hpp"
#include "bap/harness/export.hpp"
#include "bap/hlwb.hpp"
#include "bap/oracle.hpp"
#include "bap/schedule.hpp"
#include "support/figure_data.hpp"
#include "support/random_instances.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace bap;

namespace {

constexpr double kFigureTol = 5e-4;
// Calibrated once against exact_project (error 5.29e-4 at 1e5 iterations) and frozen.
constexpr double kHlwbTol = 1e-3;
constexpr int kPropertyCases = 250;

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const Outcome& o) {
  std::printf("%s  [%d] %s: %s\n", o.passed ? "PASS" : "FAIL", id, title, o.detail.c_str());
  std::fflush(stdout);
  if (!o.passed) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

IterateTrace run_preset(const harness::RunConfig& cfg, std::uint64_t sweeps) {
  return run(cfg.a_set, cfg.b_set, cfg.start, cfg.lambda, cfg.sweeps, cfg.aux,
             ControlSequence::cyclic(cfg.a_set.size(), cfg.control_offset_a),
             ControlSequence::cyclic(cfg.b_set.size(), cfg.control_offset_b), sweeps);
}

double max_figure_deviation(const IterateTrace& t, const std::vector<test::Coord>& a,
                            const std::vector<test::Coord>& b) {
  if (t.a_points.size() != a.size() || t.b_points.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int j = 0; j < 2; ++j) worst = std::max(worst, std::abs(t.a_points[i].point[j] - a[i][j]));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (int j = 0; j < 2; ++j) worst = std::max(worst, std::abs(t.b_points[i].point[j] - b[i][j]));
  return worst;
}

Outcome figure(const char* name, const std::vector<test::Coord>& a, const std::vector<test::Coord>& b,
               const std::vector<std::pair<std::size_t, test::Coord>>& a_anchors,
               const std::vector<std::pair<std::size_t, test::Coord>>& b_anchors) {
  const auto cfg = harness::preset(name);
  const auto t0 = std::chrono::steady_clock::now();
  const auto t = run_preset(cfg, cfg.num_sweeps);
  const double secs = seconds_since(t0);
  const double dev = max_figure_deviation(t, a, b);
  bool anchors_ok = true;
  for (const auto& [i, c] : a_anchors)
    anchors_ok &= std::abs(t.a_points[i].point[0] - c[0]) <= kFigureTol && std::abs(t.a_points[i].point[1] - c[1]) <= kFigureTol;
  for (const auto& [i, c] : b_anchors)
    anchors_ok &= std::abs(t.b_points[i].point[0] - c[0]) <= kFigureTol && std::abs(t.b_points[i].point[1] - c[1]) <= kFigureTol;
  const bool ok = dev <= kFigureTol && anchors_ok && secs < 1.0;
  return {ok, fmt("%zu a-points, %zu b-points, max deviation %.2e (tol %.0e), anchors %s, %.4f s", t.a_points.size(),
                  t.b_points.size(), dev, kFigureTol, anchors_ok ? "ok" : "off", secs)};
}

Outcome criterion_exp1() {
  // a_2 is the second a-point, b_9 the fifth b-point, and so on (a_{2k}, b_{2k+1}).
  return figure("exp1", test::kExp1A, test::kExp1B,
                {{1, {0.3, -9.6}}, {4, {-2.2266, -8.4844}}, {25, {-5.8257, -4.9922}}},
                {{4, {0.4953, 0.8625}}, {24, {3.6354, 4.8438}}});
}

Outcome criterion_exp2() {
  auto o = figure("exp2", test::kExp2A, test::kExp2B, {{2, {-1.625, -7.05}}, {6, {-6.2018, -0.8914}}}, {});
  const auto e1 = pair_estimate(run_preset(harness::preset("exp1"), 50));
  const auto e2 = pair_estimate(run_preset(harness::preset("exp2"), 50));
  bool same = true;
  for (int j = 0; j < 2; ++j) {
    same &= std::round(e1.a[j] * 1e4) == std::round(e2.a[j] * 1e4);
    same &= std::round(e1.b[j] * 1e4) == std::round(e2.b[j] * 1e4);
  }
  o.passed &= same;
  o.detail += fmt(", final pair %s exp1 at 4 decimals", same ? "matches" : "differs from");
  return o;
}

Outcome criterion_oracle() {
  const auto cfg = harness::preset("exp1");
  const Point a_star = make_point({-6, -5}), b_star = make_point({4, 5});
  const double dist = 10.0 * std::sqrt(2.0);
  auto rng = test::make_rng(1001);
  bool ok = true;
  double worst_point = 0.0, worst_dist = 0.0, worst_res = 0.0;
  for (int i = 0; i < 5; ++i) {
    const Point start = test::random_point(rng, 2, 25.0);
    const auto c = cheney_goldstein(cfg.a_set, cfg.b_set, start, 100000, 1e-10);
    worst_point = std::max({worst_point, (c.a_star - a_star).norm(), (c.b_star - b_star).norm()});
    worst_dist = std::max(worst_dist, std::abs(c.distance - dist));
    worst_res = std::max(worst_res, c.residual);
    ok &= c.certified;
  }
  ok &= worst_point <= 1e-8 && worst_dist <= 1e-8 && worst_res <= 1e-8;
  return {ok, fmt("5 random starts, max |pair - (a*,b*)| %.2e, max |dist - 10 sqrt 2| %.2e, max residual %.2e",
                  worst_point, worst_dist, worst_res)};
}

Outcome criterion_trend() {
  const auto cfg = harness::preset("exp1");
  const Point a_star = make_point({-6, -5}), b_star = make_point({4, 5});
  const auto p50 = pair_estimate(run_preset(cfg, 50));
  const auto t0 = std::chrono::steady_clock::now();
  const auto p200 = pair_estimate(run_preset(cfg, 200));
  const double secs = seconds_since(t0);
  const double a50 = (p50.a - a_star).norm(), b50 = (p50.b - b_star).norm();
  const double a200 = (p200.a - a_star).norm(), b200 = (p200.b - b_star).norm();
  const bool ok = a200 < a50 && b200 < b50 && secs < 5.0;
  return {ok, fmt("|a-a*| %.4g -> %.4g, |b-b*| %.4g -> %.4g (50 -> 200 sweeps), 200 sweeps in %.2f s", a50, a200,
                  b50, b200, secs)};
}

Outcome criterion_hlwb() {
  const auto cfg = harness::preset("exp1");
  const auto exact = exact_project(cfg.b_set, cfg.start);
  const auto ctrl = ControlSequence::cyclic(cfg.b_set.size());
  const auto err = [&](std::uint64_t n) {
    return (hlwb_project(cfg.b_set, cfg.start, cfg.start, n, cfg.lambda, ctrl).point - exact).norm();
  };
  const double e3 = err(1000), e5 = err(100000);
  const bool ok = e5 <= kHlwbTol && e5 < e3;
  return {ok, fmt("error %.3e at 1e5 iterations (tol %.0e), %.3e at 1e3", e5, kHlwbTol, e3)};
}

Outcome criterion_zbound() {
  const double z = z_bound_estimate(LambdaSchedule::harmonic(), SweepSchedule::geometric_floor(1.1), 30, 400);
  const double zl = z_bound_estimate(LambdaSchedule::harmonic(), SweepSchedule::linear(1.0), 10, 2000);
  const bool in_range = z >= 8.0 && z <= 12.0;
  const bool linear_big = zl > 50.0;
  return {in_range && linear_big,
          fmt("harmonic/floor(1.1^k) estimate %.6f (required in [8, 12]: %s); linear sweeps %.4f (required > 50: %s)",
              z, in_range ? "yes" : "no", zl, linear_big ? "yes" : "no")};
}

// Each property returns the number of failing cases out of kPropertyCases.
struct Property {
  const char* name;
  std::function<int()> failing;
};

int prop_idempotence() {
  auto rng = test::make_rng(2001);
  int bad = 0;
  for (int i = 0; i < kPropertyCases; ++i) {
    const auto h = test::random_halfspace(rng, 1 + i % 6);
    const auto p = project_halfspace(h, test::random_point(rng, h.dim(), 100.0));
    bad += (project_halfspace(h, p) - p).norm() > 1e-14 * std::max(1.0, p.norm());
  }
  return bad;
}

int prop_feasibility() {
  auto rng = test::make_rng(2002);
  int bad = 0;
  for (int i = 0; i < kPropertyCases; ++i) {
    const auto h = test::random_halfspace(rng, 1 + i % 6);
    const auto x = test::random_point(rng, h.dim(), 100.0);
    bad += residual(h, project_halfspace(h, x)) > 1e-12 * std::max(1.0, x.norm());
  }
  return bad;
}

int prop_nonexpansive() {
  auto rng = test::make_rng(2003);
  int bad = 0;
  for (int i = 0; i < kPropertyCases; ++i) {
    const auto h = test::random_halfspace(rng, 1 + i % 6);
    const auto x = test::random_point(rng, h.dim(), 50.0), y = test::random_point(rng, h.dim(), 50.0);
    bad += (project_halfspace(h, x) - project_halfspace(h, y)).norm() > (x - y).norm() + 1e-12;
  }
  return bad;
}

int prop_variational() {
  auto rng = test::make_rng(2004);
  int bad = 0;
  for (int i = 0; i < kPropertyCases; ++i) {
    const auto h = test::random_halfspace(rng, 1 + i % 6);
    const auto x = test::random_point(rng, h.dim(), 50.0);
    const auto y = project_halfspace(h, test::random_point(rng, h.dim(), 50.0));
    const auto p = project_halfspace(h, x);
    bad += (x - p).dot(y - p) > 1e-9;
  }
  return bad;
}

int prop_anchor_sensitivity() {
  auto rng = test::make_rng(2005);
  const auto ls = LambdaSchedule::harmonic();
  std::uniform_int_distribution<int> len(1, 400);
  int bad = 0;
  for (int i = 0; i < kPropertyCases; ++i) {
    const Eigen::Index d = 2 + i % 3;
    const auto p = test::random_polyhedron(rng, d, 1 + static_cast<std::size_t>(i % 8), test::random_point(rng, d, 3.0));
    const auto ctrl = ControlSequence::cyclic(p.size());
    const auto a = test::random_point(rng, d, 20.0), x = test::random_point(rng, d, 20.0),
               x2 = test::random_point(rng, d, 20.0);
    const auto n = static_cast<std::uint64_t>(len(rng));
    double survive = 1.0;
    for (std::uint64_t m = 1; m <= n; ++m) survive *= 1.0 - lambda(ls, m);
    const double lhs = (sweep(p, a, x, n, ls, ctrl).endpoint - sweep(p, a, x2, n, ls, ctrl).endpoint).norm();
    bad += lhs > (x - x2).norm() * survive + 1e-9;
  }
  return bad;
}

int prop_oracle_closed_form() {
  auto rng = test::make_rng(2006);
  int bad = 0;
  for (int i = 0; i < kPropertyCases; ++i) {
    const auto h = test::random_halfspace(rng, 1 + i % 5);
    const auto x = test::random_point(rng, h.dim(), 50.0);
    bad += (exact_project(Polyhedron({h}), x) - project_halfspace(h, x)).lpNorm<Eigen::Infinity>() >
           1e-12 * std::max(1.0, x.norm());
  }
  return bad;
}

int prop_cheney_goldstein_monotone() {
  auto rng = test::make_rng(2007);
  int bad = 0;
  for (int i = 0; i < kPropertyCases; ++i) {
    const auto inst = test::random_disjoint_pair(rng, 2 + i % 2, 1 + static_cast<std::size_t>(i % 3),
                                                 1 + static_cast<std::size_t>(i % 4));
    const auto c = cheney_goldstein(inst.a, inst.b, inst.start, 2000);
    bool mono = !c.distance_history.empty();
    for (std::size_t t = 1; t < c.distance_history.size(); ++t)
      mono &= c.distance_history[t] <= c.distance_history[t - 1] + 1e-12;
    bad += !mono;
  }
  return bad;
}

int prop_trace_replay() {
  auto rng = test::make_rng(2008);
  int bad = 0;
  for (int i = 0; i < kPropertyCases; ++i) {
    const auto inst = test::random_disjoint_pair(rng, 2 + i % 2, 1 + static_cast<std::size_t>(i % 3),
                                                 1 + static_cast<std::size_t>(i % 4));
    harness::RunConfig cfg{"replay",
                           inst.a.dim(),
                           inst.a,
                           inst.b,
                           inst.start,
                           LambdaSchedule::harmonic(),
                           SweepSchedule::geometric_floor(1.1),
                           static_cast<std::uint64_t>(10 + i % 30),
                           (i % 2) ? AuxStrategy::warm_start : AuxStrategy::fixed_anchor,
                           0,
                           0,
                           std::nullopt,
                           {}};
    const auto t = run_preset(cfg, cfg.num_sweeps);
    const auto doc = nlohmann::json::parse(harness::trace_to_json(t, cfg).dump());
    const auto again = harness::config_from_json(doc);
    const auto t2 = run_preset(again, again.num_sweeps);
    const auto t3 = harness::trace_from_json(doc);
    bool same = t2.a_points.size() == t.a_points.size() && t2.b_points.size() == t.b_points.size() &&
                t3.a_points.size() == t.a_points.size() && t3.b_points.size() == t.b_points.size();
    for (std::size_t k = 0; same && k < t.a_points.size(); ++k)
      same = t2.a_points[k].point == t.a_points[k].point && t3.a_points[k].point == t.a_points[k].point;
    for (std::size_t k = 0; same && k < t.b_points.size(); ++k)
      same = t2.b_points[k].point == t.b_points[k].point && t3.b_points[k].point == t.b_points[k].point;
    bad += !same;
  }
  return bad;
}

Outcome criterion_properties() {
  const std::vector<Property> props{
      {"idempotence", prop_idempotence},
      {"feasibility", prop_feasibility},
      {"nonexpansiveness", prop_nonexpansive},
      {"variational", prop_variational},
      {"anchor-sensitivity", prop_anchor_sensitivity},
      {"oracle-vs-closed-form", prop_oracle_closed_form},
      {"cheney-goldstein-monotone", prop_cheney_goldstein_monotone},
      {"trace-replay", prop_trace_replay},
  };
  bool ok = true;
  std::string detail = fmt("%d cases each;", kPropertyCases);
  for (const auto& p : props) {
    const int bad = p.failing();
    ok &= bad == 0;
    detail += fmt(" %s %d/%d", p.name, kPropertyCases - bad, kPropertyCases);
  }
  return {ok, detail};
}

Outcome guarded(const std::function<Outcome()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

int main() {
  report(1, "figure exp1 reproduction", guarded(criterion_exp1));
  report(2, "figure exp2 reproduction", guarded(criterion_exp2));
  report(3, "oracle ground truth", guarded(criterion_oracle));
  report(4, "A-HLWB convergence trend", guarded(criterion_trend));
  report(5, "HLWB vs oracle", guarded(criterion_hlwb));
  report(6, "Z-bound check", guarded(criterion_zbound));
  report(7, "property suites", guarded(criterion_properties));
  std::printf("%d of 7 criteria passed\n", 7 - failures);
  return failures == 0 ? 0 : 1;
}
