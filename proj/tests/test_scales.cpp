#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "ultrascale/scales.hpp"
#include "ultrascale/weights.hpp"

using namespace ultrascale;

namespace {

// values v_k = exp(c * w(1/eps_k)) * noise(k) over the schedule
std::vector<double> planted(double c, const Weight& w, const EpsSchedule& sched,
                            double noise_amp = 0.0) {
  std::vector<double> v;
  for (int k : sched.ks()) {
    double g = w(1.0 / EpsSchedule::eps(k));
    v.push_back(std::exp(c * g) * (1.0 + noise_amp * std::sin(1.7 * k)));
  }
  return v;
}

}

TEST_CASE("beurling members evaluate in closed form") {
  auto s = make_scale(ScaleKind::Beurling, make_power(0.5));
  CHECK(s.indices.size() == 11);
  CHECK(s.indices.front() == 0.0625);
  CHECK(s.indices.back() == 64.0);
  CHECK(s.log_member_at(1.0, std::exp2(-10)) == -32.0);
  for (double eps : {0.25, 1.0 / 1024}) {
    double lhs = s.log_member_at(0.75, eps);
    double rhs = s.log_member_at(0.5, eps) + s.log_member_at(0.25, eps);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("scale axioms hold for both kinds") {
  auto b = make_scale(ScaleKind::Beurling, make_power(0.5));
  auto rb = check_scale_axioms(b);
  CHECK(rb.decreasing_ok);
  CHECK(rb.ordering_ok);
  CHECK_FALSE(rb.ordering_vacuous);
  CHECK(rb.product_ok);
  CHECK(rb.pass());
  CHECK(rb.ordering.size() >= 10);
  for (const auto& e : rb.product) CHECK(e.witness.find("k=") == 0);

  auto r = make_scale(ScaleKind::Roumieu, make_power(0.5), 4);
  CHECK(r.size() >= 4);
  auto rr = check_scale_axioms(r);
  CHECK(rr.decreasing_ok);
  CHECK(rr.ordering_ok);
  CHECK(rr.product_ok);
  CHECK(rr.pass());
}

TEST_CASE("single-member scale fails the product condition") {
  Scale s;
  s.kind = ScaleKind::Roumieu;
  s.w = make_power(0.5);
  s.family = {make_power(0.5)};
  auto r = check_scale_axioms(s);
  CHECK(r.decreasing_ok);
  CHECK(r.ordering_vacuous);
  CHECK(r.ordering_ok);  // vacuously
  CHECK_FALSE(r.product_ok);
  CHECK_FALSE(r.pass());
  CHECK(r.note.find("product") != std::string::npos);
}

TEST_CASE("planted exponents are recovered") {
  Weight w = make_power(0.5);
  EpsSchedule sched{4, 15};
  auto up = fit_exponent(planted(2.0, w, sched), w, sched);
  CHECK(up.reliable);
  CHECK(up.slope == doctest::Approx(2.0).epsilon(1e-9));

  std::vector<double> flat(sched.ks().size(), 3.5);
  auto fl = fit_exponent(flat, w, sched);
  CHECK(fl.reliable);
  CHECK(fl.slope == 0.0);

  auto down = fit_exponent(planted(-3.0, w, sched, 0.01), w, sched);
  CHECK(down.reliable);
  CHECK(std::fabs(down.slope + 3.0) < 0.05);

  std::vector<double> bad = planted(1.0, w, sched);
  bad[3] = -1.0;
  CHECK_THROWS_AS(fit_exponent(bad, w, sched), std::invalid_argument);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(fit_exponent(bad, w, sched), std::invalid_argument);
  std::vector<double> shortvec(3, 1.0);
  CHECK_THROWS_AS(fit_exponent(shortvec, w, sched), std::invalid_argument);
}

TEST_CASE("multiplying by a member shifts the slope exactly") {
  Weight w = make_power(0.5);
  EpsSchedule sched{4, 15};
  auto base = planted(0.7, w, sched, 0.3);
  auto s1 = fit_exponent(base, w, sched).slope;
  auto shifted = base;
  auto ks = sched.ks();
  for (std::size_t i = 0; i < shifted.size(); ++i)
    shifted[i] *= std::exp(1.5 * w(1.0 / EpsSchedule::eps(ks[i])));
  auto s2 = fit_exponent(shifted, w, sched).slope;
  CHECK(std::fabs(s2 - s1 - 1.5) < 1e-9);
}

TEST_CASE("constants classify per the quantifier patterns") {
  Weight w = make_power(0.5);
  EpsSchedule sched{4, 15};
  auto B = make_scale(ScaleKind::Beurling, w);
  B.sched = sched;
  auto R = make_scale(ScaleKind::Roumieu, w);
  R.sched = sched;

  auto grow = planted(1.0, w, sched);
  auto vb = classify_constants(grow, B);
  CHECK(vb.cls == NetClass::Moderate);
  CHECK(vb.pattern.find("k=2") != std::string::npos);
  CHECK(classify_constants(grow, R).cls == NetClass::Neither);

  std::vector<double> one(sched.ks().size(), 1.0);
  CHECK(classify_constants(one, B).cls == NetClass::Moderate);
  CHECK(classify_constants(one, R).cls == NetClass::Moderate);

  // decay faster than every scale member: slope steepens along the schedule
  std::vector<double> super;
  for (int k : sched.ks()) {
    double g = w(1.0 / EpsSchedule::eps(k));
    super.push_back(std::exp(-std::pow(g, 1.2)));
  }
  DecisionConfig dc;
  dc.window = 6;
  CHECK(classify_constants(super, B, dc).cls == NetClass::Negligible);
  CHECK(classify_constants(super, R, dc).cls == NetClass::Negligible);

  // steep fixed slope beyond the truncated quantifier: beurling-negligible
  // implies roumieu-negligible
  EpsSchedule tiny{4, 7};
  auto Bt = make_scale(ScaleKind::Beurling, w);
  Bt.sched = tiny;
  auto Rt = make_scale(ScaleKind::Roumieu, w);
  Rt.sched = tiny;
  DecisionConfig dt;
  dt.window = 4;
  auto steep = planted(-65.0, w, tiny);
  CHECK(classify_constants(steep, Bt, dt).cls == NetClass::Negligible);
  CHECK(classify_constants(steep, Rt, dt).cls == NetClass::Negligible);

  std::vector<std::complex<double>> cnet;
  for (int k : sched.ks()) {
    double g = w(1.0 / EpsSchedule::eps(k));
    cnet.push_back(std::complex<double>(0.3, 0.4) * std::exp(-0.2 * g));
  }
  CHECK(classify_constants(cnet, R).cls == NetClass::Negligible);
  CHECK(classify_constants(cnet, B).cls == NetClass::Moderate);

  std::vector<double> zeros(sched.ks().size(), 0.0);
  auto vz = classify_constants(zeros, B);
  CHECK(vz.cls == NetClass::Negligible);
  CHECK(vz.pattern == "identically zero");
  std::vector<double> mixed = one;
  mixed[5] = 0.0;
  CHECK(classify_constants(mixed, B).cls == NetClass::Inconclusive);

  auto again = classify_constants(grow, B);
  CHECK(again.cls == vb.cls);
  CHECK(again.fit.slope == vb.fit.slope);
}

TEST_CASE("moderate and negligible multiply as a ring at sample scale") {
  Weight w = make_power(0.5);
  EpsSchedule sched{4, 15};
  auto B = make_scale(ScaleKind::Beurling, w);
  B.sched = sched;
  auto R = make_scale(ScaleKind::Roumieu, w);
  R.sched = sched;
  DecisionConfig dc;
  dc.window = 6;

  auto mul = [](std::vector<double> a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    return a;
  };

  // roumieu: flat x slightly-decaying stays moderate; flat x decaying is
  // negligible
  std::vector<double> flat(sched.ks().size(), 3.0);
  auto slow = planted(-0.01, w, sched);
  CHECK(classify_constants(mul(flat, slow), R).cls == NetClass::Moderate);
  auto fast = planted(-1.0, w, sched);
  CHECK(classify_constants(mul(flat, fast), R).cls == NetClass::Negligible);

  // beurling: two moderate nets multiply to moderate; moderate x negligible
  // keeps the steepening decay
  auto g1 = planted(1.0, w, sched);
  auto g2 = planted(2.0, w, sched);
  CHECK(classify_constants(mul(g1, g2), B, dc).cls == NetClass::Moderate);
  std::vector<double> super;
  for (int k : sched.ks()) {
    double g = w(1.0 / EpsSchedule::eps(k));
    super.push_back(std::exp(-std::pow(g, 1.2)));
  }
  CHECK(classify_constants(mul(g1, super), B, dc).cls == NetClass::Negligible);
  CHECK(classify_constants(mul(g1, super), R, dc).cls == NetClass::Negligible);
}

TEST_CASE("moderate functions expose finite degree") {
  Weight w = make_power(0.5);
  auto B = make_scale(ScaleKind::Beurling, w);

  auto cube = check_moderate_function([](double x) { return x * x * x; }, B);
  CHECK(cube.moderate);
  CHECK(cube.degree_finite);
  CHECK(std::fabs(cube.degree.slope - 3.0) < 0.05);
  bool saw_fit = false, saw_limited = false;
  for (const auto& e : cube.entries) {
    if (e.range_limited) saw_limited = true;
    if (!e.range_limited && e.points >= 6) {
      CHECK(std::fabs(e.fitted - 3.0) < 0.1);
      CHECK(e.ok);
      saw_fit = true;
    }
  }
  CHECK(saw_fit);
  CHECK(saw_limited);

  auto expf = check_moderate_function([](double x) { return std::exp(x); }, B);
  CHECK_FALSE(expf.moderate);
  CHECK_FALSE(expf.degree_finite);

  auto unit = check_moderate_function([](double) { return 1.0; }, B);
  CHECK(unit.moderate);
  CHECK(unit.degree_finite);
  CHECK(unit.degree.slope == 0.0);

  auto R = make_scale(ScaleKind::Roumieu, w);
  auto sq = check_moderate_function([](double x) { return x * x; }, R);
  CHECK(sq.moderate);
  CHECK(sq.note.find("bridge") != std::string::npos);

  CHECK_THROWS_AS(check_moderate_function(nullptr, B), std::invalid_argument);
}

TEST_CASE("construction guards and labels") {
  CHECK_THROWS_AS(make_scale(ScaleKind::Beurling, Weight{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_scale(ScaleKind::Roumieu, make_power(0.5), 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_scale(ScaleKind::Roumieu, make_power(0.5), 9),
                  std::invalid_argument);
  auto b = make_scale(ScaleKind::Beurling, make_power(0.5));
  CHECK(b.index_label(2) == "k=0.25");
  CHECK(b.index_label(10) == "k=64");
  auto r = make_scale(ScaleKind::Roumieu, make_power(0.5));
  CHECK_THROWS_AS(r.log_member_at(1.0, 0.5), std::logic_error);
  CHECK(r.sched.kmax <= 29);  // schedule clamped to the certified range
}
