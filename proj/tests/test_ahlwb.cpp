#include "bap/ahlwb.hpp"
#include "bap/errors.hpp"
#include "bap/oracle.hpp"
#include "support/figure_data.hpp"
#include "support/random_instances.hpp"

#include <doctest.h>

#include <cmath>

using namespace bap;

namespace {

HalfSpace hs(double c0, double c1, double delta) { return HalfSpace(make_point({c0, c1}), delta); }
Polyhedron set_a() { return Polyhedron({hs(4, -3, 17), hs(1, 0, -4), hs(1, 1, -11), hs(0, 1, -5)}); }
Polyhedron set_b() { return Polyhedron({hs(5, -4, 30), hs(1, -2, 0), hs(-1, -4, -24), hs(-2, -1, -13)}); }

const Point kA0 = make_point({8, -13});

IterateTrace run_fig(AuxStrategy aux, std::uint64_t sweeps, const SweepSchedule& ss = SweepSchedule::geometric_floor(1.1)) {
  return run(set_a(), set_b(), kA0, LambdaSchedule::harmonic(), ss, aux, ControlSequence::cyclic(4),
             ControlSequence::cyclic(4), sweeps);
}

bool near(const Point& p, const test::Coord& c, double tol) {
  return std::abs(p[0] - c[0]) <= tol && std::abs(p[1] - c[1]) <= tol;
}

double max_norm(const IterateTrace& t) {
  double m = 0.0;
  for (const auto& p : t.a_points) m = std::max(m, p.point.norm());
  for (const auto& p : t.b_points) m = std::max(m, p.point.norm());
  return m;
}

// Largest of |a0| and the distances from the origin to the bounding hyperplanes.
double data_scale(const Polyhedron& a, const Polyhedron& b, const Point& a0) {
  double m = a0.norm();
  for (const auto* p : {&a, &b})
    for (const auto& h : p->halfspaces())
      if (!h.is_trivial()) m = std::max(m, std::abs(h.offset()) / h.normal().norm());
  return m;
}

}  // namespace

TEST_SUITE("ahlwb") {

TEST_CASE("fixed anchor reproduces the first experiment figure") {
  const auto t = run_fig(AuxStrategy::fixed_anchor, 50);
  REQUIRE(t.a_points.size() == test::kExp1A.size());
  REQUIRE(t.b_points.size() == test::kExp1B.size());
  for (std::size_t i = 0; i < t.a_points.size(); ++i) CHECK(near(t.a_points[i].point, test::kExp1A[i], 5e-4));
  for (std::size_t i = 0; i < t.b_points.size(); ++i) CHECK(near(t.b_points[i].point, test::kExp1B[i], 5e-4));
}

TEST_CASE("warm start reproduces the second experiment figure") {
  const auto t = run_fig(AuxStrategy::warm_start, 50);
  REQUIRE(t.a_points.size() == test::kExp2A.size());
  REQUIRE(t.b_points.size() == test::kExp2B.size());
  for (std::size_t i = 0; i < t.a_points.size(); ++i) CHECK(near(t.a_points[i].point, test::kExp2A[i], 5e-4));
  for (std::size_t i = 0; i < t.b_points.size(); ++i) CHECK(near(t.b_points[i].point, test::kExp2B[i], 5e-4));
  CHECK(near(t.a_points[2].point, {-1.625, -7.05}, 1e-12));
  CHECK(near(t.a_points[5].point, {-4.9679, -2.074}, 6e-5));
}

TEST_CASE("trace structure") {
  for (std::uint64_t n : {1, 2, 7, 30}) {
    const auto t = run_fig(AuxStrategy::fixed_anchor, n);
    CHECK(t.completed_sweeps() == n);
    CHECK(t.b_points.size() == (n + 1) / 2);
    CHECK(t.a_points.size() == 1 + n / 2);
    CHECK(t.a_points.front().sweep == -1);
    CHECK(t.a_points.front().point == kA0);
    CHECK(std::isnan(t.a_points.front().pair_distance));
    for (std::size_t i = 0; i < t.a_points.size(); ++i) CHECK(t.a_points[i].index == 2 * i);
    for (std::size_t i = 0; i < t.b_points.size(); ++i) CHECK(t.b_points[i].index == 2 * i + 1);
    for (std::size_t k = 0; k < t.sweeps.size(); ++k) {
      CHECK(t.sweeps[k].sweep == k);
      CHECK(t.sweeps[k].target == (k % 2 == 0 ? 'B' : 'A'));
      CHECK(t.sweeps[k].length == sweep_length(SweepSchedule::geometric_floor(1.1), k));
    }
  }
}

TEST_CASE("single sweep") {
  const auto t = run_fig(AuxStrategy::fixed_anchor, 1);
  REQUIRE(t.a_points.size() == 1);
  REQUIRE(t.b_points.size() == 1);
  CHECK(near(t.b_points[0].point, {4.6, -6.2}, 1e-12));
  const auto pe = pair_estimate(t);
  CHECK(pe.a == kA0);
  CHECK(pe.b == t.b_points[0].point);
  CHECK(pe.distance == (kA0 - pe.b).norm());
}

TEST_CASE("pair estimate after 50 sweeps") {
  const auto pe = pair_estimate(run_fig(AuxStrategy::fixed_anchor, 50));
  CHECK(near(pe.a, {-5.8257, -4.9922}, 5e-4));
  CHECK(near(pe.b, {3.6354, 4.8438}, 5e-4));
  // Norm of the difference of the rounded figure coordinates.
  const double published = std::hypot(3.6354 + 5.8257, 4.8438 + 4.9922);
  CHECK(pe.distance == doctest::Approx(published).epsilon(1e-4));
  CHECK(pe.distance > 0.0);
}

TEST_CASE("pair estimate needs a b-point") {
  IterateTrace empty;
  CHECK_THROWS_AS(pair_estimate(empty), StateError);
}

TEST_CASE("strategies agree after 50 sweeps") {
  const auto f = pair_estimate(run_fig(AuxStrategy::fixed_anchor, 50));
  const auto w = pair_estimate(run_fig(AuxStrategy::warm_start, 50));
  CHECK((f.a - w.a).norm() < 1e-3);
  CHECK((f.b - w.b).norm() < 1e-3);
}

TEST_CASE("longer runs approach the oracle pair") {
  const auto cert = cheney_goldstein(set_a(), set_b(), kA0);
  REQUIRE(cert.certified);
  const auto p50 = pair_estimate(run_fig(AuxStrategy::fixed_anchor, 50));
  const auto p120 = pair_estimate(run_fig(AuxStrategy::fixed_anchor, 120));
  CHECK((p120.a - cert.a_star).norm() < (p50.a - cert.a_star).norm());
  CHECK((p120.b - cert.b_star).norm() < (p50.b - cert.b_star).norm());
  // Distances of the 50-sweep pair to the oracle pair.
  CHECK((p50.a - cert.a_star).norm() == doctest::Approx(0.174429887).epsilon(1e-6));
  CHECK((p50.b - cert.b_star).norm() == doctest::Approx(0.396661971).epsilon(1e-6));
}

TEST_CASE("boundedness on the experiment instance") {
  // 500 sweeps of floor(1.1^k) are out of reach; a slower geometric schedule
  // keeps the sweep count while staying affordable.
  const auto slow = SweepSchedule::geometric_floor(1.01);
  for (auto aux : {AuxStrategy::fixed_anchor, AuxStrategy::warm_start}) {
    const auto t = run_fig(aux, 500, slow);
    CHECK(t.completed_sweeps() == 500);
    CHECK(max_norm(t) <= 10.0 * data_scale(set_a(), set_b(), kA0));
  }
}

TEST_CASE("boundedness on random instances") {
  auto rng = test::make_rng(20);
  const auto slow = SweepSchedule::geometric_floor(1.01);
  for (int i = 0; i < 20; ++i) {
    const Eigen::Index d = 2 + i % 2;
    const auto inst = test::random_disjoint_pair(rng, d, 2 + static_cast<std::size_t>(i % 3), 1 + static_cast<std::size_t>(i % 5));
    const auto aux = (i % 2) ? AuxStrategy::warm_start : AuxStrategy::fixed_anchor;
    const auto t = run(inst.a, inst.b, inst.start, LambdaSchedule::harmonic(), slow, aux,
                       ControlSequence::cyclic(inst.a.size()), ControlSequence::cyclic(inst.b.size()), 500);
    CHECK(max_norm(t) <= 10.0 * data_scale(inst.a, inst.b, inst.start));
  }
}

TEST_CASE("unequal half-space counts are padded") {
  const Polyhedron small({hs(1, 0, -4), hs(0, 1, -5)});
  const auto ls = LambdaSchedule::harmonic();
  const auto ss = SweepSchedule::geometric_floor(1.1);
  const auto t = run(small, set_b(), kA0, ls, ss, AuxStrategy::fixed_anchor, ControlSequence::cyclic(2),
                     ControlSequence::cyclic(4), 40);
  const auto manual = run(small.padded_to(4), set_b(), kA0, ls, ss, AuxStrategy::fixed_anchor,
                          ControlSequence::cyclic(4), ControlSequence::cyclic(4), 40);
  REQUIRE(t.a_points.size() == manual.a_points.size());
  for (std::size_t i = 0; i < t.a_points.size(); ++i) CHECK(t.a_points[i].point == manual.a_points[i].point);
  for (std::size_t i = 0; i < t.b_points.size(); ++i) CHECK(t.b_points[i].point == manual.b_points[i].point);
}

TEST_CASE("optional early stop") {
  RunOptions opts;
  opts.stop_tolerance = 1e-2;
  const auto t = run(set_a(), set_b(), kA0, LambdaSchedule::harmonic(), SweepSchedule::geometric_floor(1.1),
                     AuxStrategy::fixed_anchor, ControlSequence::cyclic(4), ControlSequence::cyclic(4), 200, opts);
  CHECK(t.stopped_early);
  CHECK(t.completed_sweeps() < 200);
  const auto& s = t.sweeps;
  REQUIRE(s.size() >= 2);
  CHECK(std::abs(s.back().pair_distance - s[s.size() - 2].pair_distance) < 1e-2);
}

TEST_CASE("run errors") {
  const auto ls = LambdaSchedule::harmonic();
  const auto ss = SweepSchedule::geometric_floor(1.1);
  const auto c4 = ControlSequence::cyclic(4);
  const Polyhedron three_d({HalfSpace(make_point({1, 0, 0}), 0)});
  CHECK_THROWS_AS(run(three_d, set_b(), kA0, ls, ss, AuxStrategy::fixed_anchor, c4, c4, 5), InputError);
  CHECK_THROWS_AS(run(set_a(), set_b(), make_point({1, 2, 3}), ls, ss, AuxStrategy::fixed_anchor, c4, c4, 5),
                  InputError);
  CHECK_THROWS_AS(run(set_a(), set_b(), kA0, ls, ss, AuxStrategy::fixed_anchor, c4, c4, 0), InputError);
}

TEST_CASE("runs are deterministic") {
  for (auto aux : {AuxStrategy::fixed_anchor, AuxStrategy::warm_start}) {
    const auto t1 = run_fig(aux, 60);
    const auto t2 = run_fig(aux, 60);
    for (std::size_t i = 0; i < t1.a_points.size(); ++i) CHECK(t1.a_points[i].point == t2.a_points[i].point);
    for (std::size_t i = 0; i < t1.b_points.size(); ++i) CHECK(t1.b_points[i].point == t2.b_points[i].point);
  }
}

}  // TEST_SUITE
