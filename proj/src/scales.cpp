#include "ultrascale/scales.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ultrascale/constructions.hpp"

namespace ultrascale {

int Scale::size() const {
  return kind == ScaleKind::Beurling ? static_cast<int>(indices.size())
                                     : static_cast<int>(family.size());
}

double Scale::log_member(int i, double eps) const {
  double t = 1.0 / eps;
  if (kind == ScaleKind::Beurling) return -indices.at(i) * w(t);
  return -family.at(i)(t);
}

double Scale::log_member_at(double k, double eps) const {
  if (kind != ScaleKind::Beurling)
    throw std::logic_error("real-indexed members exist only for the beurling scale");
  return -k * w(1.0 / eps);
}

namespace {

std::string trim_number(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}

std::string Scale::index_label(int i) const {
  if (kind == ScaleKind::Beurling) return "k=" + trim_number(indices.at(i));
  return family.at(i).label;
}

Scale make_scale(ScaleKind kind, const Weight& w, int roumieu_depth) {
  if (!w.valid()) throw std::invalid_argument("scale needs a valid weight");
  if (roumieu_depth < 1 || roumieu_depth > 8)
    throw std::invalid_argument("roumieu depth must be between 1 and 8");
  Scale s;
  s.kind = kind;
  s.w = w;
  if (kind == ScaleKind::Beurling) {
    s.indices = dyadic_grid(-4, 6);
  } else {
    s.family = roumieu_family(w, roumieu_depth);
    // constructed weights are certified only up to their t_cap; keep the
    // schedule's arguments 1/eps inside it
    double cap = w.t_cap;
    for (const auto& m : s.family) cap = std::min(cap, m.t_cap);
    if (cap > 1)
      s.sched.kmax = std::min(
          s.sched.kmax, static_cast<int>(std::floor(std::log2(cap))));
  }
  return s;
}

namespace {

// log of the ratio trace along the schedule, fed to the vanishing test.
OTestResult ratio_vanishes(const std::vector<double>& logratio,
                           const DecisionConfig& dc) {
  return vanish_test_log(logratio, dc.o_window, -3.0, dc.o_min_drop);
}

}

ScaleAxiomReport check_scale_axioms(const Scale& s, const DecisionConfig& dc) {
  ScaleAxiomReport r;
  auto ks = s.sched.ks();
  int n = s.size();
  if (n == 0) {
    r.note = "empty scale";
    return r;
  }

  r.decreasing_ok = true;
  for (int i = 0; i < n; ++i) {
    double prev = s.log_member(i, EpsSchedule::eps(ks.front()));
    for (std::size_t j = 1; j < ks.size(); ++j) {
      double cur = s.log_member(i, EpsSchedule::eps(ks[j]));
      if (!(cur < prev)) {
        r.decreasing_ok = false;
        r.note = "member " + s.index_label(i) + " fails strict decrease";
      }
      prev = cur;
    }
  }

  // ordering over pairs (weaker index i, stronger index j): the stronger
  // member must vanish against the weaker in ratio
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < n; ++i) pairs.push_back({i, i + 1});
  if (n > 2) pairs.push_back({0, n - 1});
  r.ordering_vacuous = pairs.empty();
  r.ordering_ok = true;
  for (auto [i, j] : pairs) {
    std::vector<double> lr;
    for (int k : ks)
      lr.push_back(s.log_member(j, EpsSchedule::eps(k)) -
                   s.log_member(i, EpsSchedule::eps(k)));
    AxiomEntry e;
    e.pair = s.index_label(i) + " vs " + s.index_label(j);
    e.witness = "ratio trace";
    e.ok = ratio_vanishes(lr, dc).pass;
    r.ordering_ok = r.ordering_ok && e.ok;
    r.ordering.push_back(e);
  }

  // product condition: a constructed index beats a_l * a_m
  std::vector<std::pair<int, int>> ppairs;
  if (n == 1)
    ppairs.push_back({0, 0});
  else {
    ppairs.push_back({0, 1});
    ppairs.push_back({n - 2, n - 1});
    if (n > 2) ppairs.push_back({0, n - 1});
  }
  r.product_ok = true;
  for (auto [i, j] : ppairs) {
    AxiomEntry e;
    e.pair = s.index_label(i) + " * " + s.index_label(j);
    std::vector<double> lr;
    if (s.kind == ScaleKind::Beurling) {
      double k = s.indices[i] + s.indices[j] + 1.0;
      e.witness = "k=" + trim_number(k);
      for (int kk : ks) {
        double eps = EpsSchedule::eps(kk);
        lr.push_back(s.log_member_at(k, eps) - s.log_member(i, eps) -
                     s.log_member(j, eps));
      }
    } else {
      // geometric bridge between the pair's sum and the ambient weight:
      // above the sum and still strictly below w whenever w has headroom
      e.witness = "sqrt((" + s.family[i].label + "+" + s.family[j].label +
                  ") w)";
      for (int kk : ks) {
        double t = 1.0 / EpsSchedule::eps(kk);
        double sum = s.family[i](t) + s.family[j](t);
        double mu = std::sqrt(sum * s.w(t));
        lr.push_back(sum - mu);
      }
    }
    e.ok = ratio_vanishes(lr, dc).pass;
    r.product_ok = r.product_ok && e.ok;
    r.product.push_back(e);
  }
  if (!r.product_ok && r.note.empty())
    r.note = "no product witness constructible inside the family";
  return r;
}

ExponentFit fit_exponent(std::span<const double> values, const Weight& w,
                         const EpsSchedule& sched, const DecisionConfig& dc) {
  auto ks = sched.ks();
  if (values.size() != ks.size())
    throw std::invalid_argument("need one value per schedule point");
  for (double v : values)
    if (!std::isfinite(v) || v <= 0)
      throw std::invalid_argument("values must be positive and finite");
  std::vector<double> gauge, logv;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    gauge.push_back(w(1.0 / EpsSchedule::eps(ks[i])));
    logv.push_back(std::log(values[i]));
  }
  int W = std::min<int>(dc.window, static_cast<int>(gauge.size()));
  std::span<const double> gx(gauge), gy(logv);
  LinFit fit = fit_line(gx.subspan(gauge.size() - W), gy.subspan(logv.size() - W));
  ExponentFit e;
  e.slope = fit.slope;
  e.intercept = fit.intercept;
  e.rms = fit.rms;
  e.window = W;
  e.delta = dc.delta;
  double mean_g = 0;
  for (std::size_t i = gauge.size() - W; i < gauge.size(); ++i) mean_g += gauge[i];
  mean_g /= W;
  if (fit.degenerate) {
    e.reason = "degenerate fit window";
  } else if (e.rms > 0.5 * std::fabs(e.slope) * mean_g) {
    e.reason = "residual too large for the fitted slope";
  } else {
    e.reliable = true;
  }
  return e;
}

Verdict classify_constants(std::span<const double> magnitudes, const Scale& s,
                           const DecisionConfig& dc) {
  Verdict v;
  v.config = dc;
  for (double m : magnitudes)
    if (!std::isfinite(m))
      throw std::invalid_argument("net magnitudes must be finite");
  bool all_zero = !magnitudes.empty();
  for (double m : magnitudes) all_zero = all_zero && m == 0;
  if (all_zero) {
    v.cls = NetClass::Negligible;
    v.pattern = "identically zero";
    return v;
  }
  for (double m : magnitudes)
    if (m == 0) {
      v.cls = NetClass::Inconclusive;
      v.reason = "mixed zero and nonzero values cannot be fitted";
      return v;
    }
  v.fit = fit_exponent(magnitudes, s.w, s.sched, dc);
  auto ks = s.sched.ks();
  std::vector<double> gauge, logv;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    gauge.push_back(s.w(1.0 / EpsSchedule::eps(ks[i])));
    logv.push_back(std::log(magnitudes[i]));
  }
  v.evidence = analyze_slope(gauge, logv, dc.window);
  if (!v.fit.reliable) {
    v.cls = NetClass::Inconclusive;
    v.reason = v.fit.reason;
    return v;
  }
  bool moderate = false, negligible = false;
  if (s.kind == ScaleKind::Beurling) {
    // projective pattern: one index bounds the growth; decay must beat all
    double witness = 0;
    for (double k : s.indices)
      if (slope_at_most(v.evidence, k, dc)) {
        moderate = true;
        witness = k;
        break;
      }
    double top = s.indices.empty() ? dc.kmax : s.indices.back();
    bool beats_all = slope_at_most(v.evidence, -top, dc);
    negligible = moderate && (beats_all || diverging_down(v.evidence, dc));
    if (negligible)
      v.pattern = beats_all ? "o(exp(-k w)) for every sampled k up to " +
                                  trim_number(top)
                            : "slope steepening without bound";
    else if (moderate)
      v.pattern = "o(exp(k w)) at sampled index k=" + trim_number(witness);
  } else {
    // inductive pattern: growth below every positive index; decay at some
    moderate = vanishing_slope(v.evidence, dc);
    negligible = moderate && (v.evidence.slope() <= -dc.delta ||
                              diverging_down(v.evidence, dc));
    if (negligible)
      v.pattern = "slope at most -delta";
    else if (moderate)
      v.pattern = "vanishing slope against every sampled index";
  }
  v.cls = negligible ? NetClass::Negligible
                     : (moderate ? NetClass::Moderate : NetClass::Neither);
  if (v.cls == NetClass::Neither)
    v.reason = "growth exceeds the sampled index set";
  return v;
}

Verdict classify_constants(std::span<const std::complex<double>> net,
                           const Scale& s, const DecisionConfig& dc) {
  std::vector<double> mags;
  mags.reserve(net.size());
  for (const auto& z : net) mags.push_back(std::abs(z));
  return classify_constants(mags, s, dc);
}

ModerateFunctionReport check_moderate_function(
    const std::function<double(double)>& F, const Scale& s,
    const DecisionConfig& dc) {
  ModerateFunctionReport r;
  if (!F) throw std::invalid_argument("need a function");
  auto ks = s.sched.ks();
  double max_arg_exp = static_cast<double>(s.sched.kmax) * std::log(2.0);

  // log-log degree over [1, 1/eps_min]; non-finite evaluations are dropped
  // and reported as range limitation
  std::vector<double> lx, ly;
  int dropped = 0;
  for (int j = 0; j <= s.sched.kmax; ++j) {
    double x = std::exp2(static_cast<double>(j));
    double fv = F(x);
    if (std::isfinite(fv) && fv > 0) {
      lx.push_back(std::log(x));
      ly.push_back(std::log(fv));
    } else {
      ++dropped;
    }
  }
  if (lx.size() >= 4) {
    std::span<const double> sx(lx), sy(ly);
    std::size_t half = lx.size() / 2;
    LinFit early = fit_line(sx.subspan(0, half), sy.subspan(0, half));
    LinFit late = fit_line(sx.subspan(half), sy.subspan(half));
    r.degree = fit_line(sx, sy);
    r.degree_early = early.slope;
    r.degree_late = late.slope;
    r.degree_finite = !early.degenerate && !late.degenerate &&
                      std::fabs(late.slope - early.slope) <= 0.5 && dropped == 0;
  }
  if (dropped > 0)
    r.note = trim_number(dropped) + " degree-grid points overflowed; ";

  int evaluable = 0;
  bool all_ok = true;
  for (int i = 0; i < s.size(); ++i) {
    ModerateEntry e;
    e.index = s.index_label(i);
    std::vector<double> gauge, logv;
    for (int k : ks) {
      double eps = EpsSchedule::eps(k);
      double le = -s.log_member(i, eps);  // log(1/a_i)
      if (le > max_arg_exp) continue;     // argument leaves the stated domain
      double fv = F(std::exp(le));
      if (!std::isfinite(fv) || fv <= 0) continue;
      gauge.push_back(le);
      logv.push_back(std::log(fv));
    }
    e.points = static_cast<int>(gauge.size());
    if (e.points < 6) {
      e.range_limited = true;
      r.entries.push_back(e);
      continue;
    }
    // half the usable points at most, so the early fit is disjoint from the
    // late one and curvature (superpolynomial growth) becomes visible
    auto ev = analyze_slope(gauge, logv, std::min<int>(dc.window, e.points / 2));
    e.fitted = ev.slope();
    e.ok = !ev.late.degenerate && !diverging_up(ev, dc);
    if (s.kind == ScaleKind::Beurling)
      e.witness = "k=" + trim_number(s.indices[i] * (e.fitted + 1.0));
    else
      e.witness = "sqrt(" + trim_number(e.fitted + 1.0) + " " +
                  s.family[i].label + " w)";
    ++evaluable;
    all_ok = all_ok && e.ok;
    r.entries.push_back(e);
  }
  r.moderate = evaluable > 0 && all_ok;
  if (evaluable == 0) r.note += "no index had enough evaluable schedule points";
  if (s.kind == ScaleKind::Roumieu && r.moderate)
    r.note += "bridge witnesses dominate beyond the sampled range";
  return r;
}

}
