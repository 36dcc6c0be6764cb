#include "ultrascale/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <memory>
#include <stdexcept>

#include "ultrascale/errors.hpp"
#include "ultrascale/kernels.hpp"
#include "ultrascale/quadrature.hpp"
#include "ultrascale/trend.hpp"

namespace ultrascale {

double Weight::operator()(double t) const {
  if (!fn) throw std::invalid_argument("weight '" + label + "' has no body");
  if (t < 0) throw std::invalid_argument("weight evaluated at negative t");
  return fn(t);
}

std::vector<double> audit_grid(double t_cap) {
  if (!(t_cap >= 2.0))
    throw std::invalid_argument("audit grid needs t_cap >= 2");
  int jmax = static_cast<int>(std::floor(4.0 * std::log2(t_cap)));
  std::vector<double> g;
  g.reserve(jmax + 1);
  for (int j = 0; j <= jmax; ++j)
    g.push_back(std::exp2(0.25 * static_cast<double>(j)));
  return g;
}

std::vector<AuditPair> audit_pairs(const AuditConfig& cfg) {
  // Two-dimensional R2 sequence: fractional rotations by the inverse powers
  // of the plastic constant.  Deterministic given the seed, evenly spread.
  constexpr double a1 = 0.7548776662466927;
  constexpr double a2 = 0.5698402909980532;
  auto frac = [](double x) { return x - std::floor(x); };
  int decades = static_cast<int>(std::floor(std::log10(cfg.t_cap)));
  std::vector<AuditPair> out;
  out.reserve(static_cast<std::size_t>(decades) * cfg.pairs_per_decade);
  double offset = static_cast<double>(cfg.pair_seed % 100000u);
  long idx = 0;
  for (int d = 0; d < decades; ++d) {
    for (int i = 0; i < cfg.pairs_per_decade; ++i, ++idx) {
      double u = frac(0.5 + a1 * (offset + static_cast<double>(idx)));
      double v = frac(0.5 + a2 * (offset + static_cast<double>(idx)));
      AuditPair p{std::pow(10.0, d + u), std::pow(10.0, d + v)};
      if (p.x + p.y <= cfg.t_cap) out.push_back(p);
    }
  }
  return out;
}

namespace {

double parse_number(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    double num = std::stod(s.substr(0, slash));
    double den = std::stod(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return num / den;
  }
  return std::stod(s);
}

Weight build_named(const std::string& spec, double t_cap, bool gated) {
  std::string s = spec;
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  Weight w;
  w.t_cap = t_cap;
  w.label = s;
  if (s.rfind("power(", 0) == 0 && s.back() == ')') {
    double a;
    try {
      a = parse_number(s.substr(6, s.size() - 7));
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse exponent in '" + spec + "'");
    }
    if (!(a > 0))
      throw std::invalid_argument("power exponent must be positive in '" +
                                  spec + "'");
    if (gated && a >= 1.0)
      throw std::invalid_argument(
          "power(" + std::to_string(a) +
          ") rejected: the tail integral of t^a / t^2 diverges for a >= 1");
    w.kind = "power";
    w.params = {a};
    w.fn = [a](double t) { return std::pow(t, a); };
    return w;
  }
  if (s == "log") {
    if (gated)
      throw std::invalid_argument(
          "log rejected: grows like log(1+t), ratio to log(1+t) cannot "
          "diverge");
    w.kind = "log";
    w.fn = [](double t) { return std::log1p(t); };
    return w;
  }
  if (s == "log2") {
    if (gated)
      throw std::invalid_argument(
          "log2 rejected: squared logarithm is not subadditive");
    w.kind = "log2";
    w.fn = [](double t) {
      double l = std::log1p(t);
      return l * l;
    };
    return w;
  }
  if (s == "linear" || s == "power(1)" || s == "power(1.0)") {
    if (gated)
      throw std::invalid_argument(
          "linear rejected: the tail integral of t / t^2 diverges");
    w.kind = "linear";
    w.fn = [](double t) { return t; };
    return w;
  }
  throw std::invalid_argument("unknown weight spec '" + spec + "'");
}

}

Weight make_candidate(const std::string& spec, double t_cap) {
  return build_named(spec, t_cap, false);
}

Weight make_weight(const std::string& spec, double t_cap) {
  return build_named(spec, t_cap, true);
}

Weight make_power(double a, double t_cap) {
  return build_named("power(" + std::to_string(a) + ")", t_cap, true);
}

Weight make_table(std::vector<std::pair<double, double>> pts,
                  std::string label) {
  if (pts.size() < 2)
    throw std::invalid_argument("table weight needs at least 2 points");
  std::sort(pts.begin(), pts.end());
  if (pts.front().first != 0.0 || pts.front().second != 0.0)
    throw std::invalid_argument("table weight must start at (0, 0)");
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].first <= pts[i - 1].first)
      throw std::invalid_argument("table abscissae must strictly increase");
    if (pts[i].second < pts[i - 1].second)
      throw std::invalid_argument("table values must be nondecreasing");
  }
  Weight w;
  w.kind = "table";
  w.label = std::move(label);
  w.t_cap = pts.back().first;
  auto data = std::make_shared<std::vector<std::pair<double, double>>>(
      std::move(pts));
  w.fn = [data](double t) {
    const auto& p = *data;
    if (t >= p.back().first) {
      // Continue with the final slope; certified range ends at t_cap.
      auto& a = p[p.size() - 2];
      auto& b = p.back();
      double s = (b.second - a.second) / (b.first - a.first);
      return b.second + s * (t - b.first);
    }
    auto it = std::upper_bound(
        p.begin(), p.end(), t,
        [](double v, const std::pair<double, double>& q) { return v < q.first; });
    auto& b = *it;
    auto& a = *(it - 1);
    double u = (t - a.first) / (b.first - a.first);
    return a.second + u * (b.second - a.second);
  };
  return w;
}

Weight scale_weight(double c, const Weight& w) {
  if (!(c > 0)) throw std::invalid_argument("weight scale must be positive");
  Weight out = w;
  out.kind = "scaled";
  out.label = std::to_string(c) + "*" + w.label;
  out.params = {c};
  auto base = w.fn;
  out.fn = [c, base](double t) { return c * base(t); };
  return out;
}

Weight sum_weights(const Weight& a, const Weight& b) {
  Weight out;
  out.kind = "sum";
  out.label = a.label + "+" + b.label;
  out.t_cap = std::min(a.t_cap, b.t_cap);
  auto fa = a.fn, fb = b.fn;
  out.fn = [fa, fb](double t) { return fa(t) + fb(t); };
  return out;
}

namespace {

bool sample_all(const Weight& w, const std::vector<double>& ts,
                std::vector<double>& out, std::string& note) {
  out.resize(ts.size());
  bool ok = true;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    double v = w.fn(ts[i]);
    if (!std::isfinite(v) || v < 0) {
      ok = false;
      note = "non-finite or negative value at t = " + std::to_string(ts[i]);
      break;
    }
    out[i] = v;
  }
  return ok;
}

}

AxiomReport check_axioms(const Weight& w, const AuditConfig& cfg) {
  if (!w.valid()) throw std::invalid_argument("empty weight");
  AxiomReport r;
  r.t_cap = std::min(cfg.t_cap, w.t_cap);
  r.pair_seed = cfg.pair_seed;
  AuditConfig eff = cfg;
  eff.t_cap = r.t_cap;

  std::vector<double> grid = audit_grid(r.t_cap);
  std::vector<double> vals;
  if (!sample_all(w, grid, vals, r.note)) {
    r.representation_ok = false;
    return r;
  }
  double w0 = w.fn(0.0);
  if (!std::isfinite(w0)) {
    r.representation_ok = false;
    r.note = "non-finite value at t = 0";
    return r;
  }
  r.zero_at_zero = std::fabs(w0) <= 1e-12;

  // Monotonicity along the grid, first violation kept as witness.
  r.monotone = true;
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    if (vals[j + 1] < vals[j] - 1e-12 * (1.0 + std::fabs(vals[j]))) {
      r.monotone = false;
      r.monotone_witness = grid[j + 1];
      break;
    }
  }

  // Subadditivity: all grid pairs within range, then the quasi-random sweep.
  // First witness in scan order is deterministic.
  {
    std::vector<AuditPair> pairs;
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (std::size_t j = i; j < grid.size(); ++j)
        if (grid[i] + grid[j] <= r.t_cap) pairs.push_back({grid[i], grid[j]});
    for (const auto& p : audit_pairs(eff)) pairs.push_back(p);
    auto ok = [&](std::size_t i) {
      const auto& p = pairs[i];
      double lhs = w.fn(p.x + p.y);
      double rhs = w.fn(p.x) + w.fn(p.y);
      return lhs <= rhs + cfg.tol_scale * (1.0 + std::fabs(rhs));
    };
    std::size_t bad = kernels::first_violation(pairs.size(), ok);
    r.subadditive = bad == kernels::npos;
    if (!r.subadditive) {
      r.subadd_witness = pairs[bad];
      r.subadd_lhs = w.fn(pairs[bad].x + pairs[bad].y);
      r.subadd_rhs = w.fn(pairs[bad].x) + w.fn(pairs[bad].y);
    }
  }

  // Tail integral of w/t^2 over dyadic blocks, geometric decay demanded of
  // the last 8, total extrapolated from the certified decay ratio.
  {
    auto& c = r.integral;
    int J = static_cast<int>(std::floor(std::log2(r.t_cap)));
    for (int j = 0; j < J; ++j) {
      double lo = std::exp2(j);
      double hi = std::min(std::exp2(j + 1), r.t_cap);
      auto q = integrate([&w](double t) { return w.fn(t) / (t * t); }, lo, hi);
      if (!q.converged) c.quadrature_ok = false;
      c.blocks.push_back(q.value);
      c.partial += q.value;
    }
    int nb = static_cast<int>(c.blocks.size());
    if (nb >= 9) {
      double worst = 0;
      bool ok = true;
      for (int j = nb - 8; j < nb; ++j) {
        if (c.blocks[j - 1] <= 0) {
          ok = c.blocks[j] <= 0;
          continue;
        }
        worst = std::max(worst, c.blocks[j] / c.blocks[j - 1]);
      }
      c.tail_ratio = worst;
      c.decaying = ok && worst <= 0.995;
      if (c.decaying && worst > 0) {
        c.tail_estimate = c.blocks.back() * worst / (1.0 - worst);
      }
      c.total = c.partial + c.tail_estimate;
    }
    r.integral_finite = c.decaying && c.quadrature_ok;
  }

  // Ratio to log(1+t): per level M either a certified threshold from which
  // the suffix stays above M, or a still-climbing trend when t_cap is too
  // small to reach M.
  {
    std::vector<double> ratio(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
      ratio[j] = vals[j] / std::log1p(grid[j]);
    std::vector<double> suffmin(grid.size());
    double m = ratio.back();
    for (std::size_t j = grid.size(); j-- > 0;) {
      m = std::min(m, ratio[j]);
      suffmin[j] = m;
    }
    bool trend = true;
    std::size_t lookback = std::min<std::size_t>(12, grid.size() - 1);
    for (std::size_t j = grid.size() - lookback; j < grid.size(); ++j) {
      if (ratio[j] <= ratio[j - 1] * (1.0 + 1e-9)) {
        trend = false;
        break;
      }
    }
    r.superlog = true;
    for (double M : {10.0, 100.0, 1000.0}) {
      SuperLogCertificate c;
      c.M = M;
      c.final_ratio = ratio.back();
      auto it = std::find_if(suffmin.begin(), suffmin.end(),
                             [M](double v) { return v > M; });
      if (it != suffmin.end()) {
        c.threshold_found = true;
        c.t_M = grid[static_cast<std::size_t>(it - suffmin.begin())];
        c.pass = true;
      } else if (trend) {
        c.trend_certified = true;
        c.pass = true;
        c.note = "level not reached within t_cap; ratio strictly climbing";
      } else {
        c.note = "ratio neither reaches the level nor climbs";
      }
      r.superlog = r.superlog && c.pass;
      r.superlog_checks.push_back(c);
    }
  }
  return r;
}

OrderVerdict compare(const Weight& w1, const Weight& w2, CompareMode mode,
                     const AuditConfig& cfg, const DecisionConfig& dc) {
  (void)mode;
  if (!w1.valid() || !w2.valid())
    throw std::invalid_argument("compare needs two evaluable weights");
  OrderVerdict v;
  double cap = std::min({cfg.t_cap, w1.t_cap, w2.t_cap});
  v.ts = audit_grid(cap);
  v.ratios.resize(v.ts.size());
  double rmin = INFINITY, rmax = 0;  // over w2 / w1
  for (std::size_t j = 0; j < v.ts.size(); ++j) {
    double a = w1.fn(v.ts[j]);
    double b = w2.fn(v.ts[j]);
    if (!std::isfinite(a) || !std::isfinite(b) || a < 0 || b < 0)
      throw RepresentationError("non-finite weight sample in compare at t = " +
                                std::to_string(v.ts[j]));
    if (a <= 0 || b <= 0) {
      // Grid starts at t = 1; a genuine weight is positive there.
      v.diagnostic = "zero value on the audit grid";
      return v;
    }
    v.ratios[j] = a / b;
    rmin = std::min(rmin, b / a);
    rmax = std::max(rmax, b / a);
  }

  auto fwd = vanish_test(v.ratios, dc.o_window, dc.o_final, dc.o_min_drop);
  if (fwd.pass) {
    v.relation = Relation::StronglyLess;
    v.direction = +1;
    v.diagnostic = "ratio vanishes along the tail";
    return v;
  }
  std::vector<double> inv(v.ratios.size());
  for (std::size_t j = 0; j < inv.size(); ++j) inv[j] = 1.0 / v.ratios[j];
  auto bwd = vanish_test(inv, dc.o_window, dc.o_final, dc.o_min_drop);
  if (bwd.pass) {
    v.relation = Relation::StronglyLess;
    v.direction = -1;
    v.diagnostic = "inverse ratio vanishes along the tail";
    return v;
  }

  // Bounded and trend-free tail: weak equivalence with grid constants.
  std::size_t wlen = std::min<std::size_t>(dc.o_window, v.ratios.size());
  double lmin = INFINITY, lmax = -INFINITY;
  for (std::size_t j = v.ratios.size() - wlen; j < v.ratios.size(); ++j) {
    double l = std::log(v.ratios[j]);
    lmin = std::min(lmin, l);
    lmax = std::max(lmax, l);
  }
  if (lmax - lmin <= std::log(1.10)) {
    v.relation = Relation::WeakEquivalent;
    v.k = rmin;
    v.m = rmax;
    v.diagnostic = "tail ratio stable within 10 percent";
    return v;
  }
  if (rmax >= 20.0 && rmin <= 0.05) {
    v.relation = Relation::Incomparable;
    v.diagnostic = "ratio exceeds 20 in both directions on the grid";
    return v;
  }
  v.diagnostic = fwd.note.empty() ? "ratio trend unresolved within t_cap"
                                  : "ratio trend unresolved: " + fwd.note;
  return v;
}

}
