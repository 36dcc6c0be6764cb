#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "ultrascale/constructions.hpp"
#include "ultrascale/weights.hpp"

using namespace ultrascale;

namespace oracle {
// integral average of sqrt over a doubling window: (2/3)(2^{3/2}-1)/ ... the
// closed form for the sqrt base is (2 - sqrt 2) sqrt t
constexpr double kSqrtSmoothing = 0.5857864376269049;  // 2 - sqrt(2)
// upper hull of (0,0),(1,1),(2,1.2),(4,3) drops the middle point; the chord
// from (1,1) to (4,3) passes through (2, 5/3)
constexpr double kHullChordAt2 = 5.0 / 3.0;
// geometric mean of t^(1/3) and t^(1/2) at t = 2^12
constexpr double kMeanAt4096 = 32.0;
}

TEST_CASE("integral smoothing of the sqrt weight matches the closed form") {
  auto w = make_power(0.5);
  auto f = regularize(w);
  CHECK(f.t_cap == doctest::Approx(5e8));
  for (double t : {1.0, 4.0, 100.0, 1e6}) {
    CHECK(f.fn(t) ==
          doctest::Approx(oracle::kSqrtSmoothing * std::sqrt(t)).epsilon(1e-6));
  }
  CHECK(f.fn(0.0) == 0.0);
}

TEST_CASE("smoothing is sandwiched between half the weight and the weight") {
  auto w = make_weight("power(0.7)");
  auto f = regularize(w);
  for (double t : audit_grid(f.t_cap)) {
    double fv = f.fn(t), wv = w(t);
    CHECK(fv >= 0.5 * wv * (1 - 1e-9));
    CHECK(fv <= wv * (1 + 1e-9));
  }
}

TEST_CASE("concave hull of a table weight takes the chord over a sag") {
  auto w = make_table({{0, 0}, {1, 1}, {2, 1.2}, {4, 3}}, "sagged");
  auto h = concave_envelope(w);
  CHECK(h.fn(2.0) == doctest::Approx(oracle::kHullChordAt2).epsilon(1e-12));
  for (double t : audit_grid(w.t_cap)) CHECK(h.fn(t) >= w(t) * (1 - 1e-12));
  // hull vertices keep their sample values
  CHECK(h.fn(1.0) == doctest::Approx(1.0));
  CHECK(h.fn(4.0) == doctest::Approx(3.0));
}

TEST_CASE("hull of an already concave weight reproduces its samples") {
  auto w = make_power(0.5);
  auto h = concave_envelope(w);
  for (double t : audit_grid(w.t_cap))
    CHECK(h.fn(t) == doctest::Approx(w(t)).epsilon(1e-12));
}

TEST_CASE("normalized weight stays within the two-sided sandwich") {
  auto w = make_power(0.4);
  auto nw = normalize_weight(w);
  for (double t : audit_grid(nw.t_cap)) {
    CHECK(nw.fn(t) >= 0.5 * w(t) * (1 - 1e-6));
    CHECK(nw.fn(t) <= w(t) * (1 + 1e-6));
  }
}

TEST_CASE("stronger construction reaches full depth on a wide range") {
  auto w = make_power(0.5, 1e15);
  ConstructionOptions opts;
  opts.audit.t_cap = 1e15;
  auto r = build_stronger(w, opts);
  CHECK(r.complete);
  CHECK(r.depth == 24);
  CHECK(r.certified_to == doctest::Approx(1e15));
  REQUIRE(r.w.breakpoints.size() == 24);
  // thresholds double or better, and the output equals n w there exactly
  for (std::size_t k = 0; k < r.w.breakpoints.size(); ++k) {
    double T = r.w.breakpoints[k].t;
    if (k > 0) CHECK(T >= 2.0 * r.w.breakpoints[k - 1].t);
    double expect = static_cast<double>(k + 1) * w(T);
    CHECK(r.w.fn(T) == expect);
  }
  double prev = -1;
  for (double t : audit_grid(1e15)) {
    double v = r.w.fn(t);
    CHECK(v >= w(t) * (1 - 1e-12));
    CHECK(v >= prev * (1 - 1e-12));
    prev = v;
  }
}

TEST_CASE("stronger construction reports a partial depth honestly") {
  auto w = make_power(0.5);
  auto r = build_stronger(w);
  CHECK_FALSE(r.complete);
  CHECK(r.depth >= 10);
  CHECK(r.depth < 24);
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("stronger output is a weight and strictly dominates its base") {
  auto w = make_power(0.5, 1e15);
  ConstructionOptions opts;
  opts.audit.t_cap = 1e15;
  auto r = build_stronger(w, opts);
  AuditConfig cfg;
  cfg.t_cap = 1e15;
  auto rep = check_axioms(r.w, cfg);
  CHECK(rep.pass());
  auto v = compare(w, r.w, CompareMode::StrongLess, cfg);
  CHECK(v.strongly_less());
  auto back = compare(r.w, w, CompareMode::StrongLess, cfg);
  CHECK(back.relation == Relation::StronglyLess);
  CHECK(back.direction == -1);
}

TEST_CASE("weaker construction reaches full depth below 1e9") {
  auto w = make_power(0.5);
  auto r = build_weaker(w);
  CHECK(r.complete);
  CHECK(r.depth == 24);
  REQUIRE(r.w.breakpoints.size() == 24);
  for (std::size_t k = 0; k < r.w.breakpoints.size(); ++k) {
    double T = r.w.breakpoints[k].t;
    double expect = w(T) / static_cast<double>(k + 1);
    CHECK(r.w.fn(T) == expect);
  }
  for (double t : audit_grid(1e9)) {
    double v = r.w.fn(t);
    CHECK(v <= w(t) * (1 + 1e-12));
    CHECK(v >= w(t) / 25.0 * (1 - 1e-12));
  }
}

TEST_CASE("weaker output is a weight strictly below its base") {
  auto w = make_power(0.5);
  auto r = build_weaker(w);
  auto rep = check_axioms(r.w);
  CHECK(rep.pass());
  auto v = compare(r.w, w);
  CHECK(v.strongly_less());
}

TEST_CASE("geometric mean of an ordered pair lands on the mean exponent") {
  auto lo = make_weight("power(1/3)");
  auto hi = make_power(0.5);
  auto m = combine(lo, hi, CombineRule::GeometricMean);
  CHECK(m.fn(4096.0) == doctest::Approx(oracle::kMeanAt4096).epsilon(1e-12));
  auto rep = check_axioms(m);
  CHECK(rep.pass());
}

TEST_CASE("geometric mean refuses an unordered or reversed pair") {
  auto lo = make_weight("power(1/3)");
  auto hi = make_power(0.5);
  CHECK_THROWS_AS(combine(hi, lo, CombineRule::GeometricMean),
                  std::invalid_argument);
  CHECK_THROWS_AS(combine(hi, hi, CombineRule::GeometricMean),
                  std::invalid_argument);
}

TEST_CASE("join dominates both inputs up to the smoothing factor") {
  auto a = make_power(0.5, 1e15);
  auto b = make_weight("power(1/3)", 1e15);
  ConstructionOptions opts;
  opts.audit.t_cap = 1e15;
  auto j = combine(a, b, CombineRule::Join, opts);
  CHECK(j.kind == "join");
  for (double t : audit_grid(j.t_cap)) {
    double sup = std::max(a(t), b(t));
    CHECK(j.fn(t) >= 0.5 * sup * (1 - 1e-6));
  }
  AuditConfig cfg;
  cfg.t_cap = j.t_cap;
  auto rep = check_axioms(j, cfg);
  CHECK(rep.pass());
}

TEST_CASE("domination witness covers the list and stays below the bound") {
  double cap = 1e17;
  std::vector<Weight> ws = {make_weight("power(0.2)", cap),
                            make_weight("power(1/3)", cap)};
  auto w = make_power(0.5, cap);
  ConstructionOptions opts;
  opts.audit.t_cap = cap;
  auto r = dominate_sequence(ws, w, opts);
  CHECK(r.complete);
  CHECK(r.depth == 3);  // one threshold per entry plus the mean handoff
  auto grid = audit_grid(cap);
  double C = 0;
  for (const auto& u : ws)
    for (double t : grid) C = std::max(C, u(t) / r.w.fn(t));
  CHECK(C < 10.0);
  // past the last threshold the output follows the geometric mean exactly
  double Tlast = r.w.breakpoints.back().t;
  for (double t : grid)
    if (t > Tlast)
      CHECK(r.w.fn(t) ==
            doctest::Approx(std::sqrt(ws.back()(t) * w(t))).epsilon(1e-12));
  // strict domination by w certifies through the mean tail piece
  AuditConfig cfg;
  cfg.t_cap = cap;
  auto mu = make_candidate("power(5/12)", cap);
  auto v = compare(mu, w, CompareMode::StrongLess, cfg);
  CHECK(v.strongly_less());
}

TEST_CASE("domination witness accepts a constant list") {
  double cap = 1e17;
  std::vector<Weight> ws = {make_weight("power(1/3)", cap),
                            make_weight("power(1/3)", cap)};
  auto w = make_power(0.5, cap);
  ConstructionOptions opts;
  opts.audit.t_cap = cap;
  auto r = dominate_sequence(ws, w, opts);
  CHECK(r.depth == 3);
  double t = 1e15;
  double mu = std::sqrt(ws.back()(t) * w(t));
  CHECK(r.w.fn(t) == doctest::Approx(mu).epsilon(1e-12));
}

TEST_CASE("domination witness rejects an unordered list") {
  std::vector<Weight> ws = {make_power(0.5)};
  auto w = make_weight("power(1/3)");
  CHECK_THROWS_AS(dominate_sequence(ws, w), std::invalid_argument);
}

TEST_CASE("growth witness accepts polynomial growth") {
  auto w = make_power(0.5);
  auto res = witness_small_o([](double t) { return 3.0 * std::log(t); }, w,
                             WitnessDirection::Growth);
  CHECK(res.accepted);
  CHECK(res.certificate_ok);
  CHECK(res.witness.valid());
  CHECK(std::isfinite(res.log_bound));
  for (const auto& p : res.probes) CHECK(p.verdict >= 0);
  // the witness never exceeds the base weight
  for (double t : audit_grid(1e9))
    CHECK(res.witness.fn(t) <= w(t) * (1 + 1e-12));
}

TEST_CASE("growth witness rejects exp(sqrt t) at the half probe") {
  auto w = make_power(0.5);
  auto res = witness_small_o([](double t) { return std::sqrt(t); }, w,
                             WitnessDirection::Growth);
  CHECK_FALSE(res.accepted);
  CHECK(res.rejected_at == doctest::Approx(0.5));
  REQUIRE(res.probes.size() == 4);
  CHECK(res.probes[0].k == doctest::Approx(1.0));
  CHECK(res.probes[0].verdict == 0);   // flat against exp(w) itself
  CHECK(res.probes[1].verdict == -1);  // diverges against exp(w/2)
}

TEST_CASE("decay witness accepts stretched-exponential decay") {
  auto w = make_power(0.5);
  auto res = witness_small_o([](double t) { return -std::pow(t, 0.4); }, w,
                             WitnessDirection::Decay);
  CHECK(res.accepted);
  CHECK(res.witness.valid());
}

TEST_CASE("decay witness rejects merely polynomial decay") {
  auto w = make_power(0.5);
  auto res = witness_small_o([](double t) { return -std::log1p(t); }, w,
                             WitnessDirection::Decay);
  CHECK_FALSE(res.accepted);
  CHECK_FALSE(res.note.empty());
}

TEST_CASE("family below a weight is ascending and certified at the ends") {
  double cap = 17592186044416.0;  // 2^44
  auto w = make_power(0.5, cap);
  auto fam = roumieu_family(w, 4);
  REQUIRE(fam.size() == 4);
  auto grid = audit_grid(cap);
  for (std::size_t i = 0; i + 1 < fam.size(); ++i)
    for (double t : grid) CHECK(fam[i].fn(t) <= fam[i + 1].fn(t) * (1 + 1e-9));
  for (const auto& u : fam)
    for (double t : grid) CHECK(u.fn(t) <= w(t) * (1 + 1e-9));
  AuditConfig cfg;
  cfg.t_cap = cap;
  // the weaker-chain members certify pairwise strict order
  CHECK(compare(fam[0], fam[1], CompareMode::StrongLess, cfg).strongly_less());
  CHECK(compare(fam[1], w, CompareMode::StrongLess, cfg).strongly_less());
  // mean members stay within a two-constant window of w: the verdict reports
  // weak equivalence rather than claiming strictness
  auto v = compare(fam[3], w, CompareMode::StrongLess, cfg);
  CHECK_FALSE(v.strongly_less());
  CHECK(v.relation == Relation::WeakEquivalent);
  CHECK(v.m <= 3.0);
}

TEST_CASE("family members satisfy the weight axioms") {
  double cap = 17592186044416.0;
  auto w = make_power(0.5, cap);
  auto fam = roumieu_family(w, 4);
  AuditConfig cfg;
  cfg.t_cap = cap;
  for (const auto& u : fam) {
    auto rep = check_axioms(u, cfg);
    CHECK(rep.pass());
  }
}
