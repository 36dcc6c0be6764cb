#include "ultrascale/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "ultrascale/errors.hpp"
#include "ultrascale/quadrature.hpp"
#include "ultrascale/trend.hpp"

namespace ultrascale {

namespace {

// Grid preconditions shared by every breakpoint construction: the base must
// be nondecreasing and have nonincreasing slope from the origin, which is
// what normalize_weight guarantees.
void require_concave_shape(const Weight& w, const std::vector<double>& grid,
                           const std::vector<double>& vals) {
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    if (vals[j + 1] < vals[j] * (1.0 - 1e-9))
      throw std::invalid_argument("base weight '" + w.label +
                                  "' is not nondecreasing; normalize first");
    double r0 = vals[j] / grid[j];
    double r1 = vals[j + 1] / grid[j + 1];
    if (r1 > r0 * (1.0 + 1e-9))
      throw std::invalid_argument("base weight '" + w.label +
                                  "' has increasing slope from origin; "
                                  "normalize first");
  }
}

std::vector<double> sample_grid(const Weight& w, const std::vector<double>& grid) {
  std::vector<double> vals(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    vals[j] = w.fn(grid[j]);
    if (!std::isfinite(vals[j]) || vals[j] < 0)
      throw RepresentationError("weight '" + w.label +
                                "' not representable at t = " +
                                std::to_string(grid[j]));
  }
  return vals;
}

}

Weight regularize(const Weight& w) {
  if (!w.valid()) throw std::invalid_argument("empty weight");
  Weight out;
  out.kind = "regularize";
  out.label = "regularize(" + w.label + ")";
  out.t_cap = w.t_cap / 2.0;
  auto base = w.fn;
  out.fn = [base](double t) {
    if (t <= 0) return 0.0;
    return integrate([&](double y) { return base(t * y) / (y * y); }, 1.0, 2.0)
        .value;
  };
  return out;
}

Weight concave_envelope(const Weight& w) {
  if (!w.valid()) throw std::invalid_argument("empty weight");
  auto grid = audit_grid(w.t_cap);
  auto vals = sample_grid(w, grid);
  // Least concave majorant: upper hull of (0,0) and the samples, kept as
  // vertices with strictly decreasing slopes.
  auto pts = std::make_shared<std::vector<std::pair<double, double>>>();
  pts->push_back({0.0, 0.0});
  auto cross_ok = [&](const std::pair<double, double>& a,
                      const std::pair<double, double>& b,
                      const std::pair<double, double>& c) {
    // true when b stays strictly above the chord a-c (a right turn)
    return (b.first - a.first) * (c.second - a.second) -
               (b.second - a.second) * (c.first - a.first) <
           0;
  };
  for (std::size_t j = 0; j < grid.size(); ++j) {
    std::pair<double, double> p{grid[j], vals[j]};
    while (pts->size() >= 2 &&
           !cross_ok((*pts)[pts->size() - 2], (*pts)[pts->size() - 1], p))
      pts->pop_back();
    pts->push_back(p);
  }
  Weight out;
  out.kind = "envelope";
  out.label = "envelope(" + w.label + ")";
  out.t_cap = w.t_cap;
  out.fn = [pts](double t) {
    const auto& v = *pts;
    if (t <= 0) return 0.0;
    if (t >= v.back().first) {
      // extend with the final hull slope; certified range ends at t_cap
      if (v.size() < 2) return v.back().second;
      const auto& a = v[v.size() - 2];
      const auto& b = v.back();
      double s = (b.second - a.second) / (b.first - a.first);
      return b.second + s * (t - b.first);
    }
    auto it = std::upper_bound(
        v.begin(), v.end(), t,
        [](double x, const std::pair<double, double>& q) { return x < q.first; });
    const auto& b = *it;
    const auto& a = *(it - 1);
    double u = (t - a.first) / (b.first - a.first);
    return a.second + u * (b.second - a.second);
  };
  return out;
}

Weight normalize_weight(const Weight& w) {
  Weight out = concave_envelope(regularize(w));
  out.kind = "normalized";
  out.label = "normalized(" + w.label + ")";
  return out;
}

ConstructionResult build_stronger(const Weight& w,
                                  const ConstructionOptions& opts) {
  if (!w.valid()) throw std::invalid_argument("empty weight");
  double cap = std::min(w.t_cap, opts.audit.t_cap);
  auto grid = audit_grid(cap);
  auto vals = sample_grid(w, grid);
  require_concave_shape(w, grid, vals);

  // Dyadic block integrals of w/t^2 with a geometric tail certificate.
  int J = static_cast<int>(std::floor(std::log2(cap)));
  std::vector<double> blocks(J);
  for (int j = 0; j < J; ++j) {
    double lo = std::exp2(j);
    double hi = std::min(std::exp2(j + 1), cap);
    auto q = integrate([&](double t) { return w.fn(t) / (t * t); }, lo, hi,
                       opts.quad_rel_tol);
    blocks[j] = q.value;
  }
  double worst = 0;
  for (int j = std::max(1, J - 8); j < J; ++j)
    if (blocks[j - 1] > 0)
      worst = std::max(worst, blocks[j] / blocks[j - 1]);
  if (!(worst > 0) || worst > 0.995)
    throw std::invalid_argument(
        "tail integral of '" + w.label +
        "' is not certified decaying; cannot place thresholds");
  std::vector<double> suffix(J + 1);
  double geo = blocks[J - 1] * worst / (1.0 - worst);
  suffix[J] = geo;
  for (int j = J; j-- > 0;) suffix[j] = suffix[j + 1] + blocks[j];
  double A = suffix[0];

  // Thresholds T_n = 2^e by doubling: tail beyond T_n at most A / 2^n, and
  // the incoming affine bridge must keep a nonnegative intercept.
  std::vector<double> Ts;
  ConstructionResult res;
  int e = 0;
  for (int n = 1; n <= opts.max_breakpoints; ++n) {
    if (n > 1) ++e;
    double target = A * std::exp2(-static_cast<double>(n));
    while (e <= J && suffix[e] > target) ++e;
    if (e > J) break;
    if (!Ts.empty()) {
      for (;;) {
        double T1 = Ts.back(), T2 = std::exp2(e);
        double v1 = static_cast<double>(n - 1) * w.fn(T1);
        double v2 = static_cast<double>(n) * w.fn(T2);
        // intercept of the chord: nonnegative keeps value/t nonincreasing
        if (v1 * T2 - v2 * T1 >= -1e-12 * v2 * T2) break;
        if (++e > J) break;
      }
      if (e > J) break;
    }
    Ts.push_back(std::exp2(e));
  }
  if (Ts.empty())
    throw std::invalid_argument("t_cap too small for any threshold of '" +
                                w.label + "'");

  res.depth = static_cast<int>(Ts.size());
  res.complete = res.depth == opts.max_breakpoints;
  res.certified_to = cap;
  if (!res.complete)
    res.note = "partial: " + std::to_string(res.depth) + " of " +
               std::to_string(opts.max_breakpoints) +
               " thresholds fit below t_cap";

  struct Data {
    std::function<double(double)> base;
    std::vector<double> Ts, v1, slope;  // bridge k anchored at (Ts[k], v1[k])
  };
  auto d = std::make_shared<Data>();
  d->base = w.fn;
  d->Ts = Ts;
  int N = res.depth;
  for (int k = 0; k + 1 < N; ++k) {
    double a = Ts[k], b = Ts[k + 1];
    double va = static_cast<double>(k + 1) * w.fn(a);
    double vb = static_cast<double>(k + 2) * w.fn(b);
    d->v1.push_back(va);
    d->slope.push_back((vb - va) / (b - a));
  }
  Weight out;
  out.kind = "stronger";
  out.label = "stronger(" + w.label + ")";
  out.t_cap = cap;
  out.params = {static_cast<double>(N)};
  for (int k = 0; k < N; ++k)
    out.breakpoints.push_back(
        {Ts[k], std::to_string(k + 1) + "*w joined by affine bridge"});
  out.fn = [d, N](double t) {
    if (t <= d->Ts[0]) return d->base(t);
    auto it = std::upper_bound(d->Ts.begin(), d->Ts.end(), t);
    int k = static_cast<int>(it - d->Ts.begin()) - 1;
    if (k >= N - 1) return static_cast<double>(N) * d->base(t);
    double floor_v = static_cast<double>(k + 1) * d->base(t);
    double bridge = d->v1[k] + d->slope[k] * (t - d->Ts[k]);
    return std::max(floor_v, bridge);
  };
  res.w = std::move(out);
  return res;
}

namespace {

// Shared assembly for weaker-style outputs: pieces max(w/(n+1), bridge)
// capped at w, thresholds at grid points Ts.
Weight assemble_weaker(const Weight& w, const std::vector<double>& Ts,
                       const std::vector<double>& wvals_at_T,
                       const std::string& label) {
  struct Data {
    std::function<double(double)> base;
    std::vector<double> Ts, v1, slope;
  };
  auto d = std::make_shared<Data>();
  d->base = w.fn;
  d->Ts = Ts;
  int N = static_cast<int>(Ts.size());
  for (int k = 0; k + 1 < N; ++k) {
    double va = wvals_at_T[k] / static_cast<double>(k + 1);
    double vb = wvals_at_T[k + 1] / static_cast<double>(k + 2);
    d->v1.push_back(va);
    d->slope.push_back((vb - va) / (Ts[k + 1] - Ts[k]));
  }
  Weight out;
  out.kind = "weaker";
  out.label = label;
  out.t_cap = w.t_cap;
  out.params = {static_cast<double>(N)};
  for (int k = 0; k < N; ++k)
    out.breakpoints.push_back(
        {Ts[k], "w/" + std::to_string(k + 1) + " joined by affine bridge"});
  out.fn = [d, N](double t) {
    double wv = d->base(t);
    if (t <= d->Ts[0]) return wv;
    auto it = std::upper_bound(d->Ts.begin(), d->Ts.end(), t);
    int k = static_cast<int>(it - d->Ts.begin()) - 1;
    if (k >= N - 1) return wv / static_cast<double>(N);
    double floor_v = wv / static_cast<double>(k + 2);
    double bridge = d->v1[k] + d->slope[k] * (t - d->Ts[k]);
    double v = std::max(floor_v, bridge);
    // bridges never exceed the base for concave bases; cap defensively
    return std::min(v, wv);
  };
  return out;
}

}

ConstructionResult build_weaker(const Weight& w,
                                const ConstructionOptions& opts) {
  if (!w.valid()) throw std::invalid_argument("empty weight");
  double cap = std::min(w.t_cap, opts.audit.t_cap);
  auto grid = audit_grid(cap);
  auto vals = sample_grid(w, grid);
  require_concave_shape(w, grid, vals);

  // suffix minimum of the ratio to log(1+t): thresholds demand the ratio
  // stays above n^2 from T_n on
  std::vector<double> ratio(grid.size()), suffmin(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    ratio[j] = vals[j] / std::log1p(grid[j]);
  double m = INFINITY;
  for (std::size_t j = grid.size(); j-- > 0;) {
    m = std::min(m, ratio[j]);
    suffmin[j] = m;
  }

  std::vector<std::size_t> idx;
  for (int n = 1; n <= opts.max_breakpoints; ++n) {
    std::size_t j = idx.empty() ? 0 : idx.back() + 1;
    double need = static_cast<double>(n) * static_cast<double>(n);
    while (j < grid.size() && suffmin[j] < need) ++j;
    if (j >= grid.size()) break;
    if (!idx.empty()) {
      // bridge must rise and keep a nonnegative intercept
      for (;;) {
        double T1 = grid[idx.back()], T2 = grid[j];
        double v1 = vals[idx.back()] / static_cast<double>(n - 1);
        double v2 = vals[j] / static_cast<double>(n);
        if (v2 >= v1 * (1.0 - 1e-12) &&
            v1 * T2 - v2 * T1 >= -1e-12 * v2 * T2)
          break;
        if (++j >= grid.size()) break;
      }
      if (j >= grid.size()) break;
    }
    idx.push_back(j);
  }
  if (idx.size() < 2)
    throw std::invalid_argument(
        "t_cap too small to place weaker thresholds for '" + w.label + "'");

  ConstructionResult res;
  res.depth = static_cast<int>(idx.size());
  res.complete = res.depth == opts.max_breakpoints;
  res.certified_to = cap;
  if (!res.complete)
    res.note = "partial: " + std::to_string(res.depth) + " of " +
               std::to_string(opts.max_breakpoints) +
               " thresholds fit below t_cap";
  std::vector<double> Ts, wv;
  for (auto j : idx) {
    Ts.push_back(grid[j]);
    wv.push_back(vals[j]);
  }
  res.w = assemble_weaker(w, Ts, wv, "weaker(" + w.label + ")");
  return res;
}

namespace {

Weight mean_unchecked(const Weight& w1, const Weight& w2) {
  Weight out;
  out.kind = "mean";
  out.label = "mean(" + w1.label + "," + w2.label + ")";
  out.t_cap = std::min(w1.t_cap, w2.t_cap);
  auto f1 = w1.fn, f2 = w2.fn;
  out.fn = [f1, f2](double t) { return std::sqrt(f1(t) * f2(t)); };
  return out;
}

}

Weight combine(const Weight& w1, const Weight& w2, CombineRule rule,
               const ConstructionOptions& opts) {
  if (!w1.valid() || !w2.valid())
    throw std::invalid_argument("combine needs two evaluable weights");
  if (rule == CombineRule::GeometricMean) {
    auto v = compare(w1, w2, CompareMode::StrongLess, opts.audit);
    if (!v.strongly_less())
      throw std::invalid_argument(
          "geometric mean needs the first weight strictly below the second; "
          "verdict: " +
          v.diagnostic);
    return mean_unchecked(w1, w2);
  }
  // Join: stronger-than construction on the normalized pointwise sup.
  Weight sup;
  sup.kind = "sup";
  sup.label = "sup(" + w1.label + "," + w2.label + ")";
  sup.t_cap = std::min(w1.t_cap, w2.t_cap);
  auto f1 = w1.fn, f2 = w2.fn;
  sup.fn = [f1, f2](double t) { return std::max(f1(t), f2(t)); };
  auto res = build_stronger(normalize_weight(sup), opts);
  res.w.kind = "join";
  res.w.label = "join(" + w1.label + "," + w2.label + ")";
  return res.w;
}

ConstructionResult dominate_sequence(const std::vector<Weight>& ws,
                                     const Weight& w,
                                     const ConstructionOptions& opts) {
  if (ws.empty()) throw std::invalid_argument("dominate needs a nonempty list");
  if (!w.valid()) throw std::invalid_argument("empty bound weight");
  for (std::size_t i = 0; i < ws.size(); ++i) {
    auto v = compare(ws[i], w, CompareMode::StrongLess, opts.audit);
    if (!v.strongly_less())
      throw std::invalid_argument("listed weight " + std::to_string(i) + " ('" +
                                  ws[i].label +
                                  "') is not strictly below the bound; " +
                                  v.diagnostic);
  }
  double cap = std::min(w.t_cap, opts.audit.t_cap);
  for (const auto& u : ws) cap = std::min(cap, u.t_cap);
  auto grid = audit_grid(cap);
  auto wvals = sample_grid(w, grid);
  std::size_t mcount = ws.size();
  Weight mu = mean_unchecked(ws.back(), w);

  // T_n: from here on, entry n sits below its successor and the successor
  // stays under w/(n+1).  The successor of the last entry is the mean.
  std::vector<std::vector<double>> lv(mcount);
  for (std::size_t i = 0; i < mcount; ++i) lv[i] = sample_grid(ws[i], grid);
  std::vector<double> muv = sample_grid(mu, grid);

  std::vector<std::size_t> idx;
  for (std::size_t n = 0; n < mcount; ++n) {
    const auto& cur = lv[n];
    const auto& nxt = (n + 1 < mcount) ? lv[n + 1] : muv;
    // ok[j]: the ordering conditions hold at every grid point from j on
    std::vector<char> ok(grid.size());
    bool all = true;
    for (std::size_t j = grid.size(); j-- > 0;) {
      bool here = cur[j] <= nxt[j] * (1.0 + 1e-9) &&
                  nxt[j] <= wvals[j] / static_cast<double>(n + 1) * (1.0 + 1e-9);
      all = all && here;
      ok[j] = all;
    }
    std::size_t j = idx.empty() ? 0 : idx.back() + 1;
    while (j < grid.size() && !ok[j]) ++j;
    if (j >= grid.size()) {
      ConstructionResult res;
      res.depth = static_cast<int>(idx.size());
      res.certified_to = cap;
      res.note = "list entry " + std::to_string(n) +
                 " never orders below its successor within t_cap";
      throw std::invalid_argument(res.note);
    }
    idx.push_back(j);
  }
  // final handoff threshold T_m: first later grid point with a feasible
  // rising bridge into the mean
  {
    std::size_t j = idx.back() + 1;
    const auto& cur = lv[mcount - 1];
    while (j < grid.size()) {
      double T1 = grid[idx.back()], T2 = grid[j];
      double v1 = cur[idx.back()], v2 = muv[j];
      if (v2 >= v1 * (1.0 - 1e-12) && v1 * T2 - v2 * T1 >= -1e-12 * v2 * T2)
        break;
      ++j;
    }
    if (j >= grid.size())
      throw std::invalid_argument(
          "no feasible handoff into the geometric mean within t_cap");
    idx.push_back(j);
  }

  struct Data {
    std::vector<std::function<double(double)>> list;
    std::function<double(double)> mu;
    std::vector<double> Ts, v1, slope;
  };
  auto d = std::make_shared<Data>();
  for (const auto& u : ws) d->list.push_back(u.fn);
  d->mu = mu.fn;
  for (auto j : idx) d->Ts.push_back(grid[j]);
  for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
    double va = lv[k][idx[k]];
    double vb = (k + 1 < mcount) ? lv[k + 1][idx[k + 1]] : muv[idx[k + 1]];
    d->v1.push_back(va);
    d->slope.push_back((vb - va) / (grid[idx[k + 1]] - grid[idx[k]]));
  }

  ConstructionResult res;
  res.depth = static_cast<int>(idx.size());
  res.complete = true;
  res.certified_to = cap;
  Weight out;
  out.kind = "dominate";
  out.label = "dominate(" + std::to_string(mcount) + " under " + w.label + ")";
  out.t_cap = cap;
  for (std::size_t k = 0; k < d->Ts.size(); ++k)
    out.breakpoints.push_back({d->Ts[k], k + 1 < d->Ts.size()
                                             ? "entry " + std::to_string(k) +
                                                   " with affine bridge"
                                             : "geometric mean takes over"});
  int last = static_cast<int>(d->Ts.size()) - 1;
  out.fn = [d, last](double t) {
    if (t <= d->Ts[0]) return d->list[0](t);
    auto it = std::upper_bound(d->Ts.begin(), d->Ts.end(), t);
    int k = static_cast<int>(it - d->Ts.begin()) - 1;
    if (k >= last) return d->mu(t);
    double bridge = d->v1[k] + d->slope[k] * (t - d->Ts[k]);
    return std::max(d->list[k](t), bridge);
  };
  res.w = std::move(out);
  return res;
}

SmallOWitness witness_small_o(const std::function<double(double)>& log_h,
                              const Weight& w, WitnessDirection dir,
                              const ConstructionOptions& opts) {
  if (!log_h) throw std::invalid_argument("empty function to witness");
  if (!w.valid()) throw std::invalid_argument("empty weight");
  double cap = std::min(w.t_cap, opts.audit.t_cap);
  auto grid = audit_grid(cap);
  auto vals = sample_grid(w, grid);
  std::vector<double> logg(grid.size());
  SmallOWitness out;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    double lg = log_h(grid[j]);
    if (std::isnan(lg) || lg == INFINITY) {
      out.note = "function not representable at t = " + std::to_string(grid[j]);
      return out;
    }
    logg[j] = std::max(lg, -1e300);
  }

  // Probes document where g sits against exp(+-k w).  For growth they also
  // gate: a diverging probe contradicts any weaker witness.
  std::size_t look = std::min<std::size_t>(16, grid.size());
  double sgn = dir == WitnessDirection::Growth ? -1.0 : 1.0;
  bool probe_reject = false;
  for (double k : {1.0, 0.5, 0.25, 0.125}) {
    double e_first = logg[grid.size() - look] + sgn * k * vals[grid.size() - look];
    double e_last = logg.back() + sgn * k * vals.back();
    ProbeStatus ps;
    ps.k = k;
    double delta = e_last - e_first;
    if (delta > 2.3)
      ps.verdict = -1;
    else if (delta < -2.3)
      ps.verdict = +1;
    else
      ps.verdict = 0;
    if (ps.verdict < 0 && dir == WitnessDirection::Growth) {
      probe_reject = true;
      out.rejected_at = std::max(out.rejected_at, k);
    }
    out.probes.push_back(ps);
  }
  if (probe_reject) {
    out.note = "growth exceeds exp(k w) along the tail at k = " +
               std::to_string(out.rejected_at);
    return out;
  }

  if (dir == WitnessDirection::Decay) {
    ConstructionOptions o2 = opts;
    auto weak = build_weaker(w, o2);
    out.witness = weak.w;
    // certificate: log g + w'(t) must fall without bound
    std::vector<double> diff(grid.size());
    double sup = -INFINITY;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      diff[j] = logg[j] + out.witness.fn(grid[j]);
      sup = std::max(sup, diff[j]);
    }
    double d_first = diff[grid.size() - look], d_last = diff.back();
    out.log_bound = sup;
    out.certificate_ok = (d_last - d_first) < -2.3 && d_last < -2.3;
    out.accepted = out.certificate_ok;
    if (!out.accepted)
      out.note = "decay too slow: g does not fall under exp(-weaker(w))";
    return out;
  }

  // Growth: weaker-style thresholds gated by both the superlog ratio and
  // the demand log g <= w/n - log n from T_n on.
  std::vector<double> ratio(grid.size()), suffmin(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    ratio[j] = vals[j] / std::log1p(grid[j]);
  double mn = INFINITY;
  for (std::size_t j = grid.size(); j-- > 0;) {
    mn = std::min(mn, ratio[j]);
    suffmin[j] = mn;
  }
  std::vector<std::size_t> idx;
  for (int n = 1; n <= opts.max_breakpoints; ++n) {
    double need = static_cast<double>(n) * static_cast<double>(n);
    double logn = std::log(static_cast<double>(n));
    std::vector<char> ok(grid.size());
    bool all = true;
    for (std::size_t j = grid.size(); j-- > 0;) {
      bool here = suffmin[j] >= need &&
                  logg[j] <= vals[j] / static_cast<double>(n) - logn + 1e-9;
      all = all && here;
      ok[j] = all;
    }
    std::size_t j = idx.empty() ? 0 : idx.back() + 1;
    while (j < grid.size() && !ok[j]) ++j;
    if (j >= grid.size()) break;
    if (!idx.empty()) {
      for (;;) {
        double T1 = grid[idx.back()], T2 = grid[j];
        double v1 = vals[idx.back()] / static_cast<double>(n - 1);
        double v2 = vals[j] / static_cast<double>(n);
        if (v2 >= v1 * (1.0 - 1e-12) && v1 * T2 - v2 * T1 >= -1e-12 * v2 * T2)
          break;
        if (++j >= grid.size()) break;
      }
      if (j >= grid.size()) break;
    }
    idx.push_back(j);
  }
  if (idx.size() < 8) {
    out.note = "could not place enough gated thresholds within t_cap";
    return out;
  }
  std::vector<double> Ts, wv;
  for (auto j : idx) {
    Ts.push_back(grid[j]);
    wv.push_back(vals[j]);
  }
  out.witness = assemble_weaker(w, Ts, wv, "witness(" + w.label + ")");
  std::vector<double> diff(grid.size());
  double sup = -INFINITY;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    diff[j] = logg[j] - out.witness.fn(grid[j]);
    sup = std::max(sup, diff[j]);
  }
  out.log_bound = sup;
  // controlled means bounded with a falling tail: h = o(exp(w'))
  out.certificate_ok =
      std::isfinite(sup) && (diff.back() - diff[grid.size() - look]) < -2.3;
  out.accepted = out.certificate_ok;
  if (!out.accepted) out.note = "tail of log h - w' does not fall";
  return out;
}

std::vector<Weight> roumieu_family(const Weight& w, int depth) {
  if (depth < 1) throw std::invalid_argument("family depth must be >= 1");
  ConstructionOptions opts;
  opts.audit.t_cap = w.t_cap;
  int chain = (depth + 1) / 2;
  int means = depth - chain;
  std::vector<Weight> down;  // weaker chain, strongest first
  Weight cur = w;
  for (int i = 0; i < chain; ++i) {
    cur = build_weaker(cur, opts).w;
    down.push_back(cur);
  }
  std::vector<Weight> up;  // geometric-mean refinements toward w
  if (means > 0) {
    Weight mid = mean_unchecked(down.front(), w);
    up.push_back(mid);
    for (int i = 1; i < means; ++i) {
      mid = mean_unchecked(mid, w);
      up.push_back(mid);
    }
  }
  std::vector<Weight> fam;
  for (auto it = down.rbegin(); it != down.rend(); ++it) fam.push_back(*it);
  for (auto& m : up) fam.push_back(m);
  return fam;
}

}
