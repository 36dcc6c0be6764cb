#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ultrascale/weights.hpp"

using namespace ultrascale;

// Frozen expected values, computed from closed forms independent of the
// implementation.
namespace oracle {
// integral of t^(-3/2) over [1, inf), antiderivative -2 t^(-1/2)
constexpr double kSqrtTail = 2.0;
// squared-log subadditivity violation at x = y = 1
const double kLn3Sq = std::log(3.0) * std::log(3.0);      // 1.20694898586933...
const double kTwoLn2Sq = 2.0 * std::log(2.0) * std::log(2.0);  // 0.96089791614986...
}

TEST_CASE("audit grid is quarter octave") {
  auto g = audit_grid(1e9);
  REQUIRE(g.size() == 120);
  CHECK(g[0] == 1.0);
  CHECK(g[4] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(g[8] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(g.back() <= 1e9);
  CHECK(g.back() > 1e9 / std::exp2(0.25));
}

TEST_CASE("audit pairs are deterministic and in range") {
  AuditConfig cfg;
  cfg.t_cap = 1e6;
  auto p1 = audit_pairs(cfg);
  auto p2 = audit_pairs(cfg);
  REQUIRE(p1.size() == p2.size());
  CHECK(p1.size() >= 6 * 512 - 512);  // only the top decade can lose pairs
  for (std::size_t i = 0; i < p1.size(); ++i) {
    CHECK(p1[i].x == p2[i].x);
    CHECK(p1[i].y == p2[i].y);
    CHECK(p1[i].x + p1[i].y <= cfg.t_cap);
    CHECK(p1[i].x >= 1.0);
  }
  cfg.pair_seed = 1234;
  auto p3 = audit_pairs(cfg);
  CHECK(p3[0].x != p1[0].x);
}

TEST_CASE("factory gating") {
  CHECK_NOTHROW(make_weight("power(0.5)"));
  CHECK_NOTHROW(make_weight("power(1/3)"));
  CHECK_NOTHROW(make_weight("power(0.2)"));
  CHECK_THROWS_AS(make_weight("power(1.0)"), std::invalid_argument);
  CHECK_THROWS_AS(make_weight("power(1.5)"), std::invalid_argument);
  CHECK_THROWS_AS(make_weight("power(0)"), std::invalid_argument);
  CHECK_THROWS_AS(make_weight("power(-0.5)"), std::invalid_argument);
  CHECK_THROWS_AS(make_weight("log"), std::invalid_argument);
  CHECK_THROWS_AS(make_weight("log2"), std::invalid_argument);
  CHECK_THROWS_AS(make_weight("linear"), std::invalid_argument);
  CHECK_THROWS_AS(make_weight("nonsense"), std::invalid_argument);
  // candidates: evaluable, judged later
  CHECK_NOTHROW(make_candidate("log2"));
  CHECK_NOTHROW(make_candidate("linear"));
  CHECK_NOTHROW(make_candidate("power(1.0)"));

  auto cube = make_weight("power(1/3)");
  CHECK(cube.fn(8.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(cube(-1.0), std::invalid_argument);
}

TEST_CASE("table weights interpolate and validate") {
  auto t = make_table({{0, 0}, {1, 1}, {2, 1.2}, {4, 3}}, "tbl");
  CHECK(t.fn(2.0) == doctest::Approx(1.2));
  CHECK(t.fn(3.0) == doctest::Approx(2.1));
  CHECK(t.fn(8.0) == doctest::Approx(3.0 + 0.9 * 4.0));
  CHECK(t.t_cap == 4.0);
  CHECK_THROWS_AS(make_table({{0, 0}, {1, 2}, {2, 1}}, "bad"),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_table({{1, 1}, {2, 2}}, "bad"), std::invalid_argument);
}

TEST_CASE("sqrt weight passes all axioms with certified tail integral") {
  auto w = make_weight("power(0.5)");
  auto r = check_axioms(w);
  CHECK(r.representation_ok);
  CHECK(r.zero_at_zero);
  CHECK(r.monotone);
  CHECK(r.subadditive);
  CHECK(r.integral_finite);
  CHECK(r.superlog);
  CHECK(r.pass());
  CHECK(std::fabs(r.integral.total - oracle::kSqrtTail) < 1e-6);
  CHECK(r.integral.tail_ratio == doctest::Approx(std::exp2(-0.5)).epsilon(1e-4));
  // all three levels reached by an honest threshold
  for (const auto& c : r.superlog_checks) {
    CHECK(c.pass);
    CHECK(c.threshold_found);
  }
}

TEST_CASE("squared log fails subadditivity at the first diagonal pair") {
  auto w = make_candidate("log2");
  auto r = check_axioms(w);
  CHECK_FALSE(r.subadditive);
  REQUIRE(r.subadd_witness.has_value());
  CHECK(r.subadd_witness->x == 1.0);
  CHECK(r.subadd_witness->y == 1.0);
  CHECK(r.subadd_lhs == doctest::Approx(oracle::kLn3Sq).epsilon(1e-12));
  CHECK(r.subadd_rhs == doctest::Approx(oracle::kTwoLn2Sq).epsilon(1e-12));
  // the other axioms hold, so the failure is isolated
  CHECK(r.monotone);
  CHECK(r.integral_finite);
  CHECK(r.superlog);
  CHECK_FALSE(r.pass());
}

TEST_CASE("linear candidate fails the tail integral by constant blocks") {
  auto w = make_candidate("linear");
  auto r = check_axioms(w);
  CHECK_FALSE(r.integral_finite);
  CHECK(r.integral.tail_ratio > 0.995);
  // each dyadic block integrates to log 2
  CHECK(r.integral.blocks[5] == doctest::Approx(std::log(2.0)).epsilon(1e-7));
  CHECK(r.monotone);
  CHECK(r.subadditive);
  CHECK_FALSE(r.pass());
}

TEST_CASE("plain log fails only the superlog axiom") {
  auto w = make_candidate("log");
  auto r = check_axioms(w);
  CHECK(r.monotone);
  CHECK(r.subadditive);
  CHECK(r.integral_finite);
  CHECK_FALSE(r.superlog);
  for (const auto& c : r.superlog_checks) {
    CHECK_FALSE(c.threshold_found);
    CHECK_FALSE(c.trend_certified);
    CHECK(c.final_ratio == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_FALSE(r.pass());
}

TEST_CASE("small power passes via the climbing-trend certificate") {
  auto w = make_weight("power(0.2)");
  auto r = check_axioms(w);
  CHECK(r.pass());
  bool saw_trend = false;
  for (const auto& c : r.superlog_checks) {
    CHECK(c.pass);
    if (c.trend_certified) saw_trend = true;
  }
  CHECK(saw_trend);  // t^0.2 / log(1+t) cannot reach 1000 by t = 1e9
}

TEST_CASE("representation failures are reported as such") {
  Weight w;
  w.label = "broken";
  w.kind = "custom";
  w.t_cap = 1e9;
  w.fn = [](double t) { return std::sqrt(1e6 - t); };  // NaN beyond 1e6
  auto r = check_axioms(w);
  CHECK_FALSE(r.representation_ok);
  CHECK_FALSE(r.pass());

  Weight s;
  s.label = "shifted";
  s.kind = "custom";
  s.t_cap = 1e9;
  s.fn = [](double t) { return t + 1.0; };
  auto r2 = check_axioms(s);
  CHECK(r2.representation_ok);
  CHECK_FALSE(r2.zero_at_zero);
}

TEST_CASE("ordering verdicts on the power catalog") {
  AuditConfig big;
  big.t_cap = 1e12;

  auto a = make_weight("power(0.2)", 1e12);
  auto b = make_weight("power(1/3)", 1e12);
  auto v = compare(a, b, CompareMode::StrongLess, big);
  CHECK(v.relation == Relation::StronglyLess);
  CHECK(v.direction == +1);
  CHECK(v.strongly_less());

  // same pair at the default cap: the ratio has not fallen far enough, and
  // the verdict must refuse rather than guess
  auto v9 = compare(make_weight("power(0.2)"), make_weight("power(1/3)"));
  CHECK(v9.relation == Relation::Inconclusive);

  auto v2 = compare(make_weight("power(0.3)"), make_weight("power(0.5)"));
  CHECK(v2.strongly_less());

  auto v3 = compare(make_weight("power(0.5)"), make_weight("power(0.3)"));
  CHECK(v3.relation == Relation::StronglyLess);
  CHECK(v3.direction == -1);
  CHECK_FALSE(v3.strongly_less());
}

TEST_CASE("scaled weight is weakly equivalent with sharp constants") {
  auto w = make_weight("power(0.5)");
  auto w3 = scale_weight(3.0, w);
  auto v = compare(w, w3, CompareMode::WeakEquiv);
  CHECK(v.relation == Relation::WeakEquivalent);
  CHECK(v.k == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(v.m == doctest::Approx(3.0).epsilon(1e-12));

  auto self = compare(w, w, CompareMode::WeakEquiv);
  CHECK(self.relation == Relation::WeakEquivalent);
  CHECK(self.k == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(self.m == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sum of weights evaluates pointwise") {
  auto s = sum_weights(make_weight("power(0.5)"), make_weight("power(1/3)"));
  CHECK(s.fn(64.0) == doctest::Approx(8.0 + 4.0).epsilon(1e-12));
  auto c = scale_weight(2.5, make_weight("power(0.5)"));
  CHECK(c.fn(4.0) == doctest::Approx(5.0).epsilon(1e-12));
}
