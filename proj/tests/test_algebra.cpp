#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ultrascale/algebra.hpp"
#include "ultrascale/config.hpp"
#include "ultrascale/constructions.hpp"
#include "ultrascale/errors.hpp"

using namespace ultrascale;

namespace {

const Weight& bw() {
  static Weight w = make_power(0.5);
  return w;
}

NetVerdict run(const char* spec, AlgebraCase kase,
               SeminormVariant v = SeminormVariant::Linf) {
  return classify_net(catalog_net(spec, bw()), bw(), kase, v, {});
}

const EvidenceRow* row_at(const NetVerdict& v, double index) {
  for (const auto& r : v.rows)
    if (r.index == index) return &r;
  return nullptr;
}

Net scaled_bump_net(double c) {
  NetOp op;
  op.kind = NetOp::Scalar;
  double cc = c;
  op.scalar = [cc](double eps) { return std::exp(cc * bw()(1.0 / eps)); };
  op.label = "exp(" + std::to_string(cc) + "w)";
  return combine_nets(catalog_net("bump", bw()), op);
}

}  // namespace

TEST_CASE("catalog nets construct and parse") {
  Net p = catalog_net("planted:2", bw());
  CHECK(p.valid());
  CHECK(p.sched.kmin == 4);
  CHECK(p.sched.kmax == 15);
  CHECK(p.support_lo == -1);
  CHECK(p.support_hi == 1);

  CHECK(catalog_net("decay:1.3", bw()).sched.kmax == 13);
  CHECK(catalog_net("mollifier", bw()).sched.kmin == 5);
  CHECK(catalog_net("slowed", bw()).sched.kmax == 21);
  CHECK(catalog_net("embedded", bw()).sched.kmin == 6);
  CHECK(catalog_net("zero", bw()).valid());
  CHECK(catalog_net("bump", bw()).label == "gevrey");

  CHECK_THROWS_AS(catalog_net("nope", bw()), ConfigError);
  CHECK_THROWS_AS(catalog_net("planted", bw()), ConfigError);
  CHECK_THROWS_AS(catalog_net("decay:abc", bw()), ConfigError);
  CHECK_THROWS_AS(planted_net(1.0, Weight{}), std::invalid_argument);
  CHECK_THROWS_AS(decay_net(0.0, bw()), std::invalid_argument);
}

TEST_CASE("width allowance orders the seminorm variants") {
  Net m = catalog_net("mollifier", bw());
  double a = width_allowance(m, bw(), SeminormVariant::L1);
  double b = width_allowance(m, bw(), SeminormVariant::Linf);
  double c = width_allowance(m, bw(), SeminormVariant::L2);
  CHECK(b == 0.0);
  CHECK(c > 0.0);
  CHECK(a > c);
  // the L2 variant carries half the spectral-width factor of L1
  CHECK(std::fabs(a - 2 * c) < 1e-12);
  CHECK(a > 0.1);
  CHECK(a < 0.2);
}

TEST_CASE("planted nets carry their exponent across every usable row") {
  auto v = run("planted:2", AlgebraCase::Beurling);
  CHECK(v.cls == AlgebraClass::Moderate);
  CHECK(v.moderate);
  CHECK(!v.negligible);
  CHECK(v.rows.size() == 13);  // dyadic index grid 2^-6 .. 2^6
  int usable = 0, gated = 0;
  for (const auto& r : v.rows) {
    if (r.usable >= 4) {
      ++usable;
      CHECK(std::fabs(r.fit.slope - 2.0) < 0.05);
      CHECK(r.witness_found);
      CHECK(r.witness == 4.0);  // smallest sampled k clearing 2 plus margin
    } else {
      ++gated;
      CHECK(!r.note.empty());
    }
  }
  CHECK(usable == 10);
  CHECK(gated == 3);  // indices 16, 32, 64 overflow the double range
}

TEST_CASE("an overflowing cell is marked without discarding the verdict") {
  auto v = classify_net(planted_net(3.0, bw()), bw(), AlgebraCase::Beurling,
                        SeminormVariant::Linf, {});
  CHECK(v.cls == AlgebraClass::Moderate);
  const auto* r8 = row_at(v, 8.0);
  REQUIRE(r8 != nullptr);
  CHECK(r8->usable == 11);
  int marked = 0;
  for (const auto& c : r8->cells) marked += c.state == CellState::Overflow;
  CHECK(marked == 1);
  CHECK(r8->note.find("cell marked") != std::string::npos);
  CHECK(std::fabs(r8->fit.slope - 3.0) < 0.05);
}

TEST_CASE("roumieu rejects growth above the resolution floor") {
  auto v = run("planted:2", AlgebraCase::RoumieuInductive);
  CHECK(v.cls == AlgebraClass::Neither);
  CHECK(!v.moderate);
  CHECK(v.excluded.size() == 2);  // 2^-6 and 2^-5 sit under the floor
  for (const auto& kc : v.k_cells) {
    if (kc.k <= 2.0)
      CHECK(!kc.found);  // slope 2 beats every index below these k
    else
      CHECK(kc.found);
  }

  auto p = run("planted:2", AlgebraCase::RoumieuProjective);
  CHECK(p.cls == AlgebraClass::Neither);
  CHECK(p.reason.find("exceeds") != std::string::npos);

  CHECK(run("planted:0.5", AlgebraCase::RoumieuInductive).cls ==
        AlgebraClass::Neither);
  CHECK(run("planted:0.5", AlgebraCase::RoumieuProjective).cls ==
        AlgebraClass::Neither);
  CHECK(run("planted:0.5", AlgebraCase::Beurling).cls == AlgebraClass::Moderate);
}

TEST_CASE("a decaying planted net splits the presentations") {
  auto b = run("planted:-3", AlgebraCase::Beurling);
  CHECK(b.cls == AlgebraClass::Moderate);
  CHECK(!b.negligible);  // beurling negligibility asks for every sampled k
  CHECK(run("planted:-3", AlgebraCase::RoumieuInductive).cls ==
        AlgebraClass::Negligible);
  CHECK(run("planted:-3", AlgebraCase::RoumieuProjective).cls ==
        AlgebraClass::Negligible);
}

TEST_CASE("zero net is negligible and regular in every case") {
  for (auto kase : {AlgebraCase::Beurling, AlgebraCase::RoumieuInductive,
                    AlgebraCase::RoumieuProjective}) {
    auto v = run("zero", kase);
    CHECK(v.cls == AlgebraClass::Negligible);
    CHECK(v.moderate);
    CHECK(v.negligible);
    CHECK(v.pattern == "identically zero");
    auto r = classify_regular(catalog_net("zero", bw()), bw(), kase,
                              SeminormVariant::Linf, {});
    CHECK(r.cls == AlgebraClass::Regular);
    CHECK(r.regular);
  }
  auto ball = sharp_ball_membership(catalog_net("zero", bw()), bw(),
                                    BeurlingBall{4, 2.0, 8.0});
  CHECK(ball.member);
  CHECK(ball.conclusive);
}

TEST_CASE("mollifier is moderate in every presentation and regular in none") {
  DecisionConfig dc;
  Net m = catalog_net("mollifier", bw());
  for (auto kase : {AlgebraCase::Beurling, AlgebraCase::RoumieuInductive,
                    AlgebraCase::RoumieuProjective}) {
    auto v = classify_net(m, bw(), kase, SeminormVariant::Linf, dc);
    CHECK(v.cls == AlgebraClass::Moderate);
    auto r = classify_regular(m, bw(), kase, SeminormVariant::Linf, dc);
    CHECK(!r.regular);
    CHECK(r.cls == AlgebraClass::Moderate);
    CHECK(r.note.find("not regular") != std::string::npos);
  }

  auto v = classify_net(m, bw(), AlgebraCase::Beurling, SeminormVariant::Linf, dc);
  // growth index doubles the seminorm index on every usable row
  for (const auto& r : v.rows)
    if (r.usable >= 4) {
      CHECK(r.witness_found);
      CHECK(r.witness == 2 * r.index);
    }
  const auto* top = row_at(v, 8.0);
  REQUIRE(top != nullptr);
  CHECK(top->fit.slope > 10.0);

  auto ind = classify_net(m, bw(), AlgebraCase::RoumieuInductive,
                          SeminormVariant::Linf, dc);
  CHECK(ind.excluded.size() == 2);
  for (const auto& kc : ind.k_cells) CHECK(kc.found);
}

TEST_CASE("the printed quantifier order is reported against the alternative") {
  auto m = classify_net(catalog_net("mollifier", bw()), bw(),
                        AlgebraCase::Beurling, SeminormVariant::Linf, {}, true);
  CHECK(m.cls == AlgebraClass::Moderate);
  CHECK(m.note.find("readings differ") != std::string::npos);

  auto b = classify_net(catalog_net("bump", bw()), bw(), AlgebraCase::Beurling,
                        SeminormVariant::Linf, {}, true);
  CHECK(b.note.find("holds at k") != std::string::npos);
  CHECK(b.note.find("readings differ") == std::string::npos);
}

TEST_CASE("embedded function is regular in the roumieu class") {
  Net e = catalog_net("embedded", bw());
  for (auto kase : {AlgebraCase::Beurling, AlgebraCase::RoumieuInductive,
                    AlgebraCase::RoumieuProjective})
    CHECK(classify_net(e, bw(), kase, SeminormVariant::Linf, {}).cls ==
          AlgebraClass::Moderate);
  CHECK(classify_regular(e, bw(), AlgebraCase::RoumieuInductive,
                         SeminormVariant::Linf, {})
            .regular);
  CHECK(classify_regular(e, bw(), AlgebraCase::RoumieuProjective,
                         SeminormVariant::Linf, {})
            .regular);
  // the band cut grows faster than the bump spectrum decays at indices
  // above the spectral rate, so the beurling form keeps a growing index
  auto rb = classify_regular(e, bw(), AlgebraCase::Beurling,
                             SeminormVariant::Linf, {});
  CHECK(!rb.regular);
  CHECK(rb.cls == AlgebraClass::Moderate);
}

TEST_CASE("slowed mollifier is moderate and regular") {
  Net s = catalog_net("slowed", bw());
  for (auto kase : {AlgebraCase::Beurling, AlgebraCase::RoumieuInductive,
                    AlgebraCase::RoumieuProjective}) {
    CHECK(classify_net(s, bw(), kase, SeminormVariant::Linf, {}).cls ==
          AlgebraClass::Moderate);
    auto r = classify_regular(s, bw(), kase, SeminormVariant::Linf, {});
    CHECK(r.regular);
    CHECK(r.cls == AlgebraClass::Regular);
  }
}

TEST_CASE("decaying net is negligible in every case") {
  for (auto kase : {AlgebraCase::Beurling, AlgebraCase::RoumieuInductive,
                    AlgebraCase::RoumieuProjective}) {
    auto v = run("decay:1.3", kase);
    CHECK(v.cls == AlgebraClass::Negligible);
    CHECK(v.negligible);
  }
}

TEST_CASE("constant bump is moderate with a uniform growth index") {
  for (auto kase : {AlgebraCase::Beurling, AlgebraCase::RoumieuInductive,
                    AlgebraCase::RoumieuProjective}) {
    auto v = run("bump", kase);
    CHECK(v.cls == AlgebraClass::Moderate);
    CHECK(!v.negligible);
  }
  auto r = classify_regular(catalog_net("bump", bw()), bw(),
                            AlgebraCase::Beurling, SeminormVariant::Linf, {});
  CHECK(r.regular);
  CHECK(r.witness.find("0.01562") != std::string::npos);
}

TEST_CASE("roumieu presentations agree across the catalog") {
  for (const char* spec : {"planted:-2", "planted:0", "planted:0.5", "zero",
                           "mollifier", "slowed", "embedded", "decay:1.3"}) {
    auto r = crosscheck_roumieu(catalog_net(spec, bw()), bw(),
                                SeminormVariant::Linf, {});
    INFO(spec);
    CHECK(r.conclusive);
    CHECK(r.moderate_agree);
    CHECK(r.negligible_agree);
    CHECK(r.regular_agree);
    CHECK(r.agree);
  }
}

TEST_CASE("seminorm variants do not change verdicts") {
  auto all_equal = [](const char* spec, AlgebraCase kase) {
    auto a = run(spec, kase, SeminormVariant::L1);
    auto b = run(spec, kase, SeminormVariant::Linf);
    auto c = run(spec, kase, SeminormVariant::L2);
    INFO(spec);
    CHECK(a.cls == b.cls);
    CHECK(b.cls == c.cls);
    CHECK(a.negligible == c.negligible);
  };
  all_equal("mollifier", AlgebraCase::Beurling);
  all_equal("mollifier", AlgebraCase::RoumieuInductive);
  all_equal("mollifier", AlgebraCase::RoumieuProjective);
  all_equal("planted:2", AlgebraCase::RoumieuInductive);
  all_equal("planted:-3", AlgebraCase::RoumieuInductive);
  all_equal("decay:1.3", AlgebraCase::Beurling);
  all_equal("bump", AlgebraCase::RoumieuProjective);
  all_equal("zero", AlgebraCase::Beurling);
}

TEST_CASE("plain L2 norms decide negligibility on moderate nets") {
  DecisionConfig dc;
  struct Case {
    const char* spec;
    AlgebraCase kase;
  } cases[] = {
      {"decay:1.3", AlgebraCase::Beurling},
      {"decay:1.3", AlgebraCase::RoumieuInductive},
      {"bump", AlgebraCase::Beurling},
      {"bump", AlgebraCase::RoumieuInductive},
      {"zero", AlgebraCase::Beurling},
      {"mollifier", AlgebraCase::RoumieuInductive},
      {"slowed", AlgebraCase::RoumieuInductive},
      {"embedded", AlgebraCase::Beurling},
  };
  for (const auto& c : cases) {
    Net n = catalog_net(c.spec, bw());
    auto l2 = negligible_via_l2(n, bw(), c.kase, dc);
    auto direct = classify_net(n, bw(), c.kase, SeminormVariant::L1, dc);
    INFO(c.spec);
    CHECK((l2.cls == NetClass::Negligible) == direct.negligible);
  }

  // exp(-3w) times a bump: the plain norms fall at rate 3, which the roumieu
  // constants accept and the beurling ones do not
  Net em3 = scaled_bump_net(-3.0);
  auto rl2 = negligible_via_l2(em3, bw(), AlgebraCase::RoumieuInductive, dc);
  CHECK(rl2.cls == NetClass::Negligible);
  auto bl2 = negligible_via_l2(em3, bw(), AlgebraCase::Beurling, dc);
  CHECK(bl2.cls == NetClass::Moderate);
  CHECK(std::fabs(bl2.fit.slope + 3.0) < 0.05);
  // first sampled k where o(exp(-k w)) fails for this slope
  double first_fail = 0;
  for (double k : dyadic_grid(dc.exists_lo, dc.exists_hi))
    if (!(bl2.fit.slope <= -k - dc.margin(k))) {
      first_fail = k;
      break;
    }
  CHECK(first_fail == 4.0);

  CHECK_THROWS_AS(
      negligible_via_l2(catalog_net("planted:2", bw()), bw(),
                        AlgebraCase::RoumieuInductive, dc),
      std::invalid_argument);
}

TEST_CASE("sharp balls rank decay requirements") {
  Net em3 = scaled_bump_net(-3.0);
  auto in2 = sharp_ball_membership(em3, bw(), BeurlingBall{8, 1.0, 2.0});
  auto in4 = sharp_ball_membership(em3, bw(), BeurlingBall{8, 1.0, 4.0});
  CHECK(in2.member);
  CHECK(in2.conclusive);
  CHECK(!in4.member);
  CHECK(in4.conclusive);
  // nesting: the decay-4 ball sits inside the decay-2 ball
  CHECK((!in4.member || in2.member));

  auto bump1 = sharp_ball_membership(catalog_net("bump", bw()), bw(),
                                     BeurlingBall{8, 1.0, 1.0});
  CHECK(!bump1.member);
  CHECK(bump1.conclusive);

  auto fam = roumieu_family(bw(), DecisionConfig{}.roumieu_depth);
  auto r_weak = sharp_ball_membership(em3, bw(), RoumieuBall{fam[1], fam[0]});
  auto r_strong = sharp_ball_membership(em3, bw(), RoumieuBall{fam[1], fam[3]});
  CHECK(r_weak.member);
  CHECK(r_strong.member);
  CHECK((!r_strong.member || r_weak.member));  // stronger decay demand nests
  CHECK(!sharp_ball_membership(catalog_net("bump", bw()), bw(),
                               RoumieuBall{fam[1], fam[0]})
             .member);

  // a schedule too short to fit leaves the row unresolved, never a claim
  auto short_ball = sharp_ball_membership(
      planted_net(-3.0, bw(), GridSpec{}, EpsSchedule{4, 6}), bw(),
      BeurlingBall{8, 1.0, 2.0});
  CHECK(!short_ball.member);
  CHECK(!short_ball.conclusive);

  // support outside the ball region is clipped and flagged
  NetOp sh;
  sh.kind = NetOp::Translate;
  sh.shift = 3.0;
  auto shifted = combine_nets(catalog_net("bump", bw()), sh);
  auto clipped = sharp_ball_membership(shifted, bw(), BeurlingBall{1, 1.0, 2.0});
  CHECK(clipped.note.find("clipped") != std::string::npos);

  CHECK_THROWS_AS(
      sharp_ball_membership(em3, bw(), BeurlingBall{9, 1.0, 1.0}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      sharp_ball_membership(em3, bw(), BeurlingBall{8, 1.0, 0.0}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      sharp_ball_membership(em3, bw(), RoumieuBall{Weight{}, fam[0]}),
      std::invalid_argument);
}

TEST_CASE("nets combine under product, derivative, translation, scaling") {
  DecisionConfig dc;
  NetOp prod;
  prod.kind = NetOp::Product;

  // moderate times moderate adds the exponents
  auto mm = combine_nets(planted_net(1.0, bw()), planted_net(0.5, bw()), prod);
  auto vmm = classify_net(mm, bw(), AlgebraCase::Beurling, SeminormVariant::Linf, dc);
  CHECK(vmm.cls == AlgebraClass::Moderate);
  const auto* r1 = row_at(vmm, 1.0);
  REQUIRE(r1 != nullptr);
  CHECK(std::fabs(r1->fit.slope - 1.5) < 0.05);

  // moderate times negligible stays negligible
  auto mn = combine_nets(planted_net(1.0, bw(), GridSpec{}, EpsSchedule{4, 13}),
                         catalog_net("decay:1.3", bw()), prod);
  CHECK(classify_net(mn, bw(), AlgebraCase::Beurling, SeminormVariant::Linf, dc)
            .negligible);
  auto bn = combine_nets(catalog_net("bump", bw()), planted_net(-3.0, bw()), prod);
  CHECK(classify_net(bn, bw(), AlgebraCase::RoumieuInductive,
                     SeminormVariant::Linf, dc)
            .negligible);
  auto bm = combine_nets(
      constant_net(make_bump(BumpKind::Gevrey), GridSpec{}, EpsSchedule{5, 10}),
      catalog_net("mollifier", bw()), prod);
  CHECK(classify_net(bm, bw(), AlgebraCase::RoumieuInductive,
                     SeminormVariant::Linf, dc)
            .moderate);
  CHECK(classify_net(bm, bw(), AlgebraCase::RoumieuProjective,
                     SeminormVariant::Linf, dc)
            .moderate);

  // the spectral factor of the derivative is absorbed by the class
  NetOp ddx;
  ddx.kind = NetOp::Derivative;
  CHECK(classify_net(combine_nets(catalog_net("decay:1.3", bw()), ddx), bw(),
                     AlgebraCase::Beurling, SeminormVariant::Linf, dc)
            .negligible);
  CHECK(classify_net(combine_nets(planted_net(-3.0, bw()), ddx), bw(),
                     AlgebraCase::RoumieuInductive, SeminormVariant::Linf, dc)
            .negligible);

  // translation inside the window does not change the verdict
  NetOp sh;
  sh.kind = NetOp::Translate;
  sh.shift = 3.0;
  auto shifted = combine_nets(catalog_net("bump", bw()), sh);
  CHECK(classify_net(shifted, bw(), AlgebraCase::Beurling, SeminormVariant::Linf,
                     dc)
            .cls == run("bump", AlgebraCase::Beurling).cls);
  sh.shift = 20.0;
  CHECK_THROWS_AS(combine_nets(catalog_net("bump", bw()), sh), WindowError);

  // scalar null sequence forces negligibility
  auto em2 = scaled_bump_net(-2.0);
  CHECK(classify_net(em2, bw(), AlgebraCase::RoumieuInductive,
                     SeminormVariant::Linf, dc)
            .negligible);

  NetOp bad;
  bad.kind = NetOp::Scalar;
  CHECK_THROWS_AS(combine_nets(catalog_net("bump", bw()), bad),
                  std::invalid_argument);
  CHECK_THROWS_AS(combine_nets(catalog_net("bump", bw()),
                               catalog_net("mollifier", bw()), prod),
                  std::invalid_argument);  // schedules differ
  CHECK_THROWS_AS(
      combine_nets(planted_net(1.0, bw(), GridSpec{16.0, 14}),
                   planted_net(1.0, bw()), prod),
      std::invalid_argument);  // grids differ
  NetOp unary_prod;
  unary_prod.kind = NetOp::Product;
  CHECK_THROWS_AS(combine_nets(catalog_net("bump", bw()), unary_prod),
                  std::invalid_argument);
}

TEST_CASE("uniform projective bound names its witness rows") {
  DecisionConfig dc;
  auto fam = roumieu_family(bw(), dc.roumieu_depth);
  auto rep = uniform_projective_bound(catalog_net("slowed", bw()), bw(), fam[1],
                                      SeminormVariant::L1, dc);
  CHECK(rep.rows.size() == 4);
  CHECK(rep.ok);
  for (const auto& e : rep.rows) CHECK(e.ok);

  // the mollifier outgrows any single constructed bound
  CHECK(!uniform_projective_bound(catalog_net("mollifier", bw()), bw(),
                                  make_power(0.25), SeminormVariant::L1, dc)
             .ok);

  // power(0.25) dominates the weaker family rows but not the top mean row
  // at this schedule; its margin over that row lives beyond the sampled range
  auto p25 = uniform_projective_bound(catalog_net("slowed", bw()), bw(),
                                      make_power(0.25), SeminormVariant::L1, dc);
  CHECK(p25.rows[0].ok);
  CHECK(p25.rows[1].ok);
  CHECK(!p25.ok);

  CHECK_THROWS_AS(uniform_projective_bound(catalog_net("slowed", bw()), bw(),
                                           Weight{}, SeminormVariant::L1, dc),
                  std::invalid_argument);
}

TEST_CASE("verdicts are deterministic and internally consistent") {
  auto a = run("mollifier", AlgebraCase::Beurling);
  auto b = run("mollifier", AlgebraCase::Beurling);
  CHECK(a.cls == b.cls);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].usable == b.rows[i].usable);
    if (a.rows[i].usable >= 4) CHECK(a.rows[i].fit.slope == b.rows[i].fit.slope);
  }

  for (auto kase : {AlgebraCase::Beurling, AlgebraCase::RoumieuInductive,
                    AlgebraCase::RoumieuProjective}) {
    auto v = classify_regular(catalog_net("slowed", bw()), bw(), kase,
                              SeminormVariant::Linf, {});
    if (v.regular) CHECK(v.moderate);  // Regular implies Moderate
    if (v.cls == AlgebraClass::Negligible) CHECK(v.moderate);
  }
  CHECK(run("planted:0", AlgebraCase::RoumieuProjective).rows.size() == 4);

  CHECK_THROWS_AS(classify_net(catalog_net("zero", bw()), Weight{},
                               AlgebraCase::Beurling),
                  std::invalid_argument);
  CHECK_THROWS_AS(classify_net(Net{}, bw(), AlgebraCase::Beurling),
                  std::invalid_argument);
}
