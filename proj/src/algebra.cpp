#include "ultrascale/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include "ultrascale/constructions.hpp"
#include "ultrascale/errors.hpp"
#include "ultrascale/kernels.hpp"
#include "ultrascale/mollifier.hpp"

namespace ultrascale {

namespace {

std::string num(double x) {
  char b[40];
  std::snprintf(b, sizeof b, "%.4g", x);
  return b;
}

// Three-valued aggregation: a quantifier applied to sampled rows can be
// blocked by a row the fit could not resolve without being refuted by it.
enum class Tri { Yes, No, Unknown };

GridFunction scaled_bump(const GridFunction& base, double s, std::string label) {
  GridFunction f = base;
  for (auto& z : f.samples) z *= s;
  f.label = std::move(label);
  return f;
}

}  // namespace

std::string to_string(AlgebraCase c) {
  switch (c) {
    case AlgebraCase::Beurling:
      return "beurling";
    case AlgebraCase::RoumieuInductive:
      return "roumieu-inductive";
    default:
      return "roumieu-projective";
  }
}

std::string to_string(AlgebraClass c) {
  switch (c) {
    case AlgebraClass::Moderate:
      return "Moderate";
    case AlgebraClass::Negligible:
      return "Negligible";
    case AlgebraClass::Regular:
      return "Regular";
    case AlgebraClass::Neither:
      return "Neither";
    default:
      return "Inconclusive";
  }
}

Net planted_net(double k0, const Weight& w, GridSpec g, EpsSchedule sched) {
  if (!w.valid()) throw std::invalid_argument("planted net needs an evaluable weight");
  auto bump = std::make_shared<GridFunction>(
      sample_on_grid(make_bump(BumpKind::Gevrey), g));
  auto fn = w.fn;
  Net net;
  net.grid = g;
  net.sched = sched;
  net.support_lo = bump->support_lo;
  net.support_hi = bump->support_hi;
  net.label = "planted(" + num(k0) + ")";
  std::string lab = net.label;
  net.generator = [bump, fn, k0, lab](double eps) {
    return scaled_bump(*bump, std::exp(k0 * fn(1.0 / eps)),
                       lab + " eps=" + num(eps));
  };
  return net;
}

Net decay_net(double p, const Weight& w, GridSpec g, EpsSchedule sched) {
  if (!w.valid()) throw std::invalid_argument("decay net needs an evaluable weight");
  if (!(p > 0)) throw std::invalid_argument("decay power must be positive");
  auto bump = std::make_shared<GridFunction>(
      sample_on_grid(make_bump(BumpKind::Gevrey), g));
  auto fn = w.fn;
  Net net;
  net.grid = g;
  net.sched = sched;
  net.support_lo = bump->support_lo;
  net.support_hi = bump->support_hi;
  net.label = "decay(" + num(p) + ")";
  std::string lab = net.label;
  net.generator = [bump, fn, p, lab](double eps) {
    return scaled_bump(*bump, std::exp(-std::pow(fn(1.0 / eps), p)),
                       lab + " eps=" + num(eps));
  };
  return net;
}

Net zero_net(GridSpec g, EpsSchedule sched) {
  Net net;
  net.grid = g;
  net.sched = sched;
  net.support_lo = -1;
  net.support_hi = 1;
  net.label = "zero";
  net.generator = [g](double) {
    GridFunction f;
    f.grid = g;
    f.samples.assign(static_cast<std::size_t>(g.n()), {0.0, 0.0});
    f.support_lo = -1;
    f.support_hi = 1;
    f.label = "zero";
    return f;
  };
  return net;
}

Net constant_net(const SampledFunction& f, GridSpec g, EpsSchedule sched) {
  auto base = std::make_shared<GridFunction>(sample_on_grid(f, g));
  Net net;
  net.grid = g;
  net.sched = sched;
  net.support_lo = base->support_lo;
  net.support_hi = base->support_hi;
  net.label = f.label.empty() ? "constant" : f.label;
  net.generator = [base](double) { return *base; };
  return net;
}

namespace {

// Band-limited net synthesized in frequency: profile(xi) evaluated on the
// ascending frequency grid, then carried back.  Support is the full window.
GridFunction from_symbol(const GridSpec& g,
                         const std::function<double(double)>& profile,
                         const std::string& label) {
  int n = g.n();
  double dxi = g.xi_spacing();
  std::vector<std::complex<double>> spec(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    spec[static_cast<std::size_t>(i)] = profile((i - n / 2) * dxi);
  GridFunction f = inverse_transform(spec, g, label);
  f.support_lo = -g.L;
  f.support_hi = g.L;
  return f;
}

}  // namespace

Net mollifier_net(GridSpec g, EpsSchedule sched) {
  Net net;
  net.grid = g;
  net.sched = sched;
  net.support_lo = -g.L;
  net.support_hi = g.L;
  net.label = "mollifier";
  net.generator = [g](double eps) {
    return from_symbol(
        g, [eps](double xi) { return mollifier_symbol(eps * xi); },
        "mollifier eps=" + num(eps));
  };
  return net;
}

Net slowed_mollifier_net(GridSpec g, EpsSchedule sched) {
  Net net;
  net.grid = g;
  net.sched = sched;
  net.support_lo = -g.L;
  net.support_hi = g.L;
  net.label = "slowed mollifier";
  net.generator = [g](double eps) {
    double eta = std::sqrt(eps);
    return from_symbol(
        g, [eta](double xi) { return mollifier_symbol(eta * xi); },
        "slowed mollifier eps=" + num(eps));
  };
  return net;
}

Net embedded_net(const SampledFunction& f, GridSpec g, EpsSchedule sched) {
  auto spec = std::make_shared<std::vector<std::complex<double>>>(
      forward_transform(sample_on_grid(f, g)));
  Net net;
  net.grid = g;
  net.sched = sched;
  net.support_lo = -g.L;
  net.support_hi = g.L;
  net.label = "embedded(" + (f.label.empty() ? "f" : f.label) + ")";
  std::string lab = net.label;
  net.generator = [spec, g, lab](double eps) {
    int n = g.n();
    double dxi = g.xi_spacing();
    std::vector<std::complex<double>> cut(*spec);
    for (int i = 0; i < n; ++i)
      cut[static_cast<std::size_t>(i)] *= mollifier_symbol(eps * (i - n / 2) * dxi);
    GridFunction out = inverse_transform(cut, g, lab + " eps=" + num(eps));
    out.support_lo = -g.L;
    out.support_hi = g.L;
    return out;
  };
  return net;
}

Net catalog_net(const std::string& spec, const Weight& w, GridSpec g) {
  std::string name = spec, arg;
  if (auto pos = spec.find(':'); pos != std::string::npos) {
    name = spec.substr(0, pos);
    arg = spec.substr(pos + 1);
  }
  auto need_arg = [&]() {
    if (arg.empty())
      throw ConfigError("net '" + name + "' needs a numeric parameter, e.g. " +
                        name + ":2");
    try {
      return std::stod(arg);
    } catch (const std::exception&) {
      throw ConfigError("bad net parameter '" + arg + "'");
    }
  };
  if (name == "planted") return planted_net(need_arg(), w, g);
  if (name == "decay") return decay_net(need_arg(), w, g);
  if (name == "zero") return zero_net(g);
  if (name == "bump") return constant_net(make_bump(BumpKind::Gevrey), g);
  if (name == "mollifier") return mollifier_net(g);
  if (name == "slowed") return slowed_mollifier_net(g);
  if (name == "embedded") return embedded_net(make_bump(BumpKind::Gevrey), g);
  throw ConfigError("unknown catalog net '" + name + "'");
}

namespace {

std::vector<GridFunction> realize(const Net& net) {
  if (!net.valid()) throw std::invalid_argument("net has no generator");
  std::vector<GridFunction> out;
  out.reserve(net.sched.ks().size());
  for (int k : net.sched.ks()) {
    GridFunction f = net.generator(EpsSchedule::eps(k));
    if (!f.valid() || !(f.grid == net.grid))
      throw ConfigError("net generator returned a function off the declared grid");
    out.push_back(std::move(f));
  }
  return out;
}

struct RowPlan {
  double index = 1;
  Weight wrow;
  bool gated = false;
};

std::vector<RowPlan> plan_rows(const Weight& w, AlgebraCase kase,
                               const GridSpec& g,
                               const std::vector<Weight>& fam,
                               const DecisionConfig& dc) {
  std::vector<RowPlan> out;
  if (kase == AlgebraCase::RoumieuProjective) {
    for (const auto& m : fam) out.push_back({1.0, m, 1.0 > max_index_for(m, g)});
  } else {
    for (double l : dyadic_grid(dc.forall_lo, dc.forall_hi))
      out.push_back({l, w, l > max_index_for(w, g)});
  }
  return out;
}

// Leading-run bookkeeping, fits, and slope evidence for one evaluated row.
// gauge_w is the base weight the slopes are measured against; dil, when
// given, is the row's own weight whose dilated growth rate is recorded.
void finish_row(EvidenceRow& row, const Weight& gauge_w,
                const EpsSchedule& sched, const DecisionConfig& dc,
                const Weight* dil) {
  const auto ks = sched.ks();
  bool all_ok = true, all_zero = true;
  for (const auto& c : row.cells) {
    all_ok = all_ok && c.state == CellState::Ok;
    all_zero = all_zero && c.state == CellState::Ok && c.value == 0.0;
  }
  if (all_ok && all_zero && !row.cells.empty()) {
    row.zero = true;
    row.usable = static_cast<int>(row.cells.size());
    return;
  }
  int u = 0;
  for (auto& c : row.cells) {
    if (c.state != CellState::Ok) break;
    if (!(c.value > 0)) {
      c.state = CellState::Underflow;
      break;
    }
    ++u;
  }
  row.usable = u;
  row.range_limited = u < 6;
  if (u < 4) {
    row.note += "too few clean cells to fit; ";
    return;
  }
  std::vector<double> vals(static_cast<std::size_t>(u));
  row.gauge.resize(static_cast<std::size_t>(u));
  row.logv.resize(static_cast<std::size_t>(u));
  for (int i = 0; i < u; ++i) {
    const auto& c = row.cells[static_cast<std::size_t>(i)];
    vals[static_cast<std::size_t>(i)] = c.value;
    row.gauge[static_cast<std::size_t>(i)] = gauge_w(1.0 / c.eps);
    row.logv[static_cast<std::size_t>(i)] = std::log(c.value);
  }
  row.fit =
      fit_exponent(vals, gauge_w, EpsSchedule{ks.front(), ks.front() + u - 1}, dc);
  int win = std::max(2, std::min(dc.window, u / 2));
  row.ev = analyze_slope(row.gauge, row.logv, win);
  if (dil && dil->valid()) {
    std::vector<double> dv(static_cast<std::size_t>(u));
    for (int i = 0; i < u; ++i)
      dv[static_cast<std::size_t>(i)] =
          (*dil)(2.0 / row.cells[static_cast<std::size_t>(i)].eps);
    row.rho = fit_line(row.gauge, dv).slope;
  }
}

std::vector<EvidenceRow> build_rows(const Net& net, const Weight& gauge_w,
                                    const std::vector<RowPlan>& plans,
                                    SeminormVariant variant,
                                    const std::vector<GridFunction>& funcs,
                                    const DecisionConfig& dc, bool projective) {
  const auto ks = net.sched.ks();
  const std::size_t ne = ks.size(), nr = plans.size();
  std::vector<EvidenceRow> rows(nr);
  for (std::size_t r = 0; r < nr; ++r) {
    rows[r].index = plans[r].index;
    rows[r].weight_label = plans[r].wrow.label;
    rows[r].cells.resize(ne);
    for (std::size_t e = 0; e < ne; ++e)
      rows[r].cells[e].eps = EpsSchedule::eps(ks[e]);
    if (plans[r].gated) {
      for (auto& c : rows[r].cells) c.state = CellState::Overflow;
      rows[r].note = "index above the representable bound " +
                     num(max_index_for(plans[r].wrow, net.grid)) +
                     " for this grid; ";
    }
  }
  // Cells are independent; a cell that overflows or trips a guard is marked,
  // never allowed to unwind out of the parallel region.
  std::vector<char> threw(nr * ne, 0);
  kernels::for_each_index(nr * ne, [&](std::size_t i) {
    const std::size_t r = i / ne, e = i % ne;
    if (plans[r].gated) return;
    SeminormSpec spec;
    spec.w = plans[r].wrow;
    spec.l = plans[r].index;
    spec.variant = variant;
    spec.k_lo = net.support_lo;
    spec.k_hi = net.support_hi;
    auto& cell = rows[r].cells[e];
    try {
      double v = seminorm(funcs[e], spec);
      if (std::isfinite(v))
        cell.value = v;
      else {
        cell.state = CellState::Overflow;
        threw[i] = 1;
      }
    } catch (const std::exception&) {
      cell.state = CellState::Overflow;
      threw[i] = 1;
    }
  });
  for (std::size_t r = 0; r < nr; ++r) {
    if (plans[r].gated) continue;
    for (std::size_t e = 0; e < ne; ++e)
      if (threw[r * ne + e]) {
        rows[r].note += "cell marked at eps=" + num(rows[r].cells[e].eps) + "; ";
        break;
      }
    finish_row(rows[r], gauge_w, net.sched, dc,
               projective ? &plans[r].wrow : nullptr);
  }
  return rows;
}

Tri meet_forall(Tri acc, Tri x) {
  if (acc == Tri::No || x == Tri::No) return Tri::No;
  if (acc == Tri::Unknown || x == Tri::Unknown) return Tri::Unknown;
  return Tri::Yes;
}

// A fit on a nearly constant row is flagged unreliable because its noise
// threshold scales with the slope, but no growth is evidence, not noise.
// Such a row resolves: both slope windows sit inside the vanishing cap.
bool flat_row(const EvidenceRow& row, const DecisionConfig& dc) {
  return row.usable >= 4 && std::fabs(row.ev.late.slope) <= dc.vanish_cap &&
         std::fabs(row.ev.early.slope) <= dc.vanish_cap;
}

bool resolved_row(const EvidenceRow& row, const DecisionConfig& dc) {
  return row.fit.reliable || flat_row(row, dc);
}

struct UniformIndex {
  Tri ok = Tri::No;
  double k = 0;
  std::string why;
};

// The swapped-order moderateness pattern: one growth index bounding every
// counted row, vetoed when the top rows' slopes still rise with the index
// (a sampled bound that exists only because the index grid is finite).
UniformIndex uniform_index_check(const std::vector<EvidenceRow>& rows,
                                 const std::vector<std::size_t>& counted,
                                 const std::vector<double>& grid,
                                 const DecisionConfig& dc) {
  UniformIndex u;
  for (auto i : counted)
    if (!rows[i].zero && !resolved_row(rows[i], dc)) {
      u.ok = Tri::Unknown;
      u.why = "a row fit is unreliable";
      return u;
    }
  for (double k : grid) {
    bool all = true;
    for (auto i : counted) {
      if (rows[i].zero) continue;
      if (!slope_at_most(rows[i].ev, k, dc)) {
        all = false;
        break;
      }
    }
    if (all) {
      u.ok = Tri::Yes;
      u.k = k;
      break;
    }
  }
  if (u.ok != Tri::Yes) {
    u.why = "no sampled growth index bounds every row";
    return u;
  }
  std::vector<std::pair<double, double>> s;
  for (auto i : counted)
    if (!rows[i].zero) s.emplace_back(rows[i].index, rows[i].ev.slope());
  std::sort(s.begin(), s.end());
  if (s.size() >= 2) {
    double top = s.back().second, prev = s[s.size() - 2].second;
    if (top - prev > std::max(2 * dc.delta, 0.1 * std::fabs(top))) {
      u.ok = Tri::No;
      u.why = "growth still rises with the index (slope " + num(prev) +
              " -> " + num(top) + " at the top rows)";
    }
  }
  return u;
}

std::vector<std::size_t> counted_rows(const std::vector<EvidenceRow>& rows) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].zero || rows[i].usable >= 4) out.push_back(i);
  return out;
}

}  // namespace

double width_allowance(const Net& net, const Weight& w, SeminormVariant v) {
  double m = 0;
  if (v == SeminormVariant::L1) m = 1.0;
  if (v == SeminormVariant::L2) m = 0.5;
  if (m == 0) return 0;
  const auto ks = net.sched.ks();
  std::vector<double> gw(ks.size()), lg(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    gw[i] = w(1.0 / EpsSchedule::eps(ks[i]));
    lg[i] = ks[i] * std::log(2.0);
  }
  return m * std::max(0.0, fit_line(gw, lg).slope);
}

NetVerdict classify_net(const Net& net, const Weight& w, AlgebraCase kase,
                        SeminormVariant variant, const DecisionConfig& dc,
                        bool alt_uniform_index) {
  if (!w.valid()) throw std::invalid_argument("classification needs an evaluable weight");
  NetVerdict v;
  v.kase = kase;
  v.variant = variant;
  v.config = dc;
  v.width_slope = width_allowance(net, w, variant);
  std::vector<Weight> fam;
  if (kase == AlgebraCase::RoumieuProjective)
    fam = roumieu_family(w, dc.roumieu_depth);
  const auto funcs = realize(net);
  const auto plans = plan_rows(w, kase, net.grid, fam, dc);
  v.rows = build_rows(net, w, plans, variant, funcs, dc,
                      kase == AlgebraCase::RoumieuProjective);
  const auto counted = counted_rows(v.rows);
  if (counted.empty()) {
    v.cls = AlgebraClass::Inconclusive;
    v.reason = "no usable evidence rows at this schedule";
    return v;
  }
  bool allz = true;
  for (auto i : counted) allz = allz && v.rows[i].zero;
  if (allz) {
    v.moderate = v.negligible = true;
    v.cls = AlgebraClass::Negligible;
    v.pattern = "identically zero";
    return v;
  }

  const auto grid = dyadic_grid(dc.forall_lo, dc.forall_hi);
  Tri mod = Tri::Yes, neg = Tri::No;

  if (kase == AlgebraCase::Beurling) {
    for (auto i : counted) {
      auto& row = v.rows[i];
      if (row.zero) continue;
      if (diverging_up(row.ev, dc)) {
        mod = Tri::No;
        if (v.reason.empty())
          v.reason = "slope steepening upward at index " + num(row.index);
        row.note += "slope steepening upward; ";
        continue;
      }
      if (!resolved_row(row, dc)) {
        mod = meet_forall(mod, Tri::Unknown);
        row.note += "fit unreliable (" + row.fit.reason + "); ";
        continue;
      }
      bool found = false;
      for (double k : grid)
        if (slope_at_most(row.ev, k, dc)) {
          row.witness = k;
          row.witness_found = true;
          found = true;
          break;
        }
      if (!found) {
        mod = Tri::No;
        if (v.reason.empty())
          v.reason = "growth at index " + num(row.index) +
                     " exceeds every sampled growth index";
      }
    }
    if (mod == Tri::Yes) {
      neg = Tri::Yes;
      for (auto i : counted) {
        auto& row = v.rows[i];
        if (row.zero) continue;
        if (diverging_down(row.ev, dc)) continue;
        if (!resolved_row(row, dc)) {
          neg = meet_forall(neg, Tri::Unknown);
          continue;
        }
        if (!slope_at_most(row.ev, -dc.kmax, dc)) {
          neg = Tri::No;
          break;
        }
      }
      v.pattern = "o(exp(k w(1/eps))) with a sampled k for every sampled index";
    }
    if (alt_uniform_index) {
      const auto u = uniform_index_check(v.rows, counted, grid, dc);
      std::string alt = u.ok == Tri::Yes
                            ? "holds at k = " + num(u.k)
                            : (u.ok == Tri::No ? "fails: " + u.why
                                               : "unresolved: " + u.why);
      bool printed_yes = mod == Tri::Yes;
      v.note += "uniform-index alternative (one k for every index) " + alt +
                "; printed-order pattern " +
                (printed_yes ? std::string("holds") : std::string("does not hold")) +
                ((u.ok == Tri::Yes) != printed_yes ? "; the readings differ; "
                                                   : "; ");
    }
  } else if (kase == AlgebraCase::RoumieuInductive) {
    double lmin = v.rows.empty() ? 0.0 : v.rows.front().index;
    for (const auto& row : v.rows) lmin = std::min(lmin, row.index);
    const double floor = v.width_slope + 2 * lmin + dc.vanish_tol;
    std::vector<double> ck;
    for (double k : grid) {
      if (k - dc.margin(k) >= floor)
        ck.push_back(k);
      else
        v.excluded.push_back(k);
    }
    if (ck.empty()) {
      v.cls = AlgebraClass::Inconclusive;
      v.reason = "resolution floor " + num(floor) +
                 " excludes every sampled growth index";
      return v;
    }
    if (!v.excluded.empty())
      v.note += "growth indices up to " + num(v.excluded.back()) +
                " sit under the resolution floor " + num(floor) +
                " and are not counted; ";
    for (double k : ck) {
      KCell cell;
      cell.k = k;
      bool unknown = false, any_candidate = false;
      for (auto i : counted) {
        auto& row = v.rows[i];
        if (!(row.index < k)) continue;
        any_candidate = true;
        if (row.zero) {
          cell.found = true;
          cell.witness = row.index;
          break;
        }
        if (!resolved_row(row, dc)) {
          unknown = true;
          continue;
        }
        if (slope_at_most(row.ev, k, dc)) {
          cell.found = true;
          cell.witness = row.index;
          break;
        }
      }
      if (!cell.found) {
        if (!any_candidate || unknown) {
          mod = meet_forall(mod, Tri::Unknown);
          cell.note = "candidate rows unresolved";
        } else {
          mod = Tri::No;
          cell.note = "no sampled index below " + num(k) + " meets the bound";
          if (v.reason.empty())
            v.reason = "no witness index below growth index " + num(k);
        }
      }
      v.k_cells.push_back(cell);
    }
    if (mod == Tri::Yes) {
      v.pattern = "a witness seminorm index below every counted growth index";
      bool unknown = false;
      for (auto i : counted) {
        auto& row = v.rows[i];
        if (row.zero) {
          neg = Tri::Yes;
          v.witness = "index " + num(row.index) + " identically zero";
          break;
        }
        if (diverging_down(row.ev, dc)) {
          neg = Tri::Yes;
          v.witness = "slope steepening without bound at index " + num(row.index);
          break;
        }
        if (!resolved_row(row, dc)) {
          unknown = true;
          continue;
        }
        for (double k : grid)
          if (slope_at_most(row.ev, -k, dc)) {
            neg = Tri::Yes;
            v.witness = "o(exp(-" + num(k) + " w(1/eps))) at index " + num(row.index);
            break;
          }
        if (neg == Tri::Yes) break;
      }
      if (neg != Tri::Yes && unknown) neg = Tri::Unknown;
    }
  } else {
    for (auto i : counted) {
      auto& row = v.rows[i];
      if (row.zero) continue;
      if (diverging_down(row.ev, dc)) {
        row.note += "slope steepening without bound; ";
        continue;
      }
      if (!resolved_row(row, dc)) {
        mod = meet_forall(mod, Tri::Unknown);
        row.note += "fit unreliable (" + row.fit.reason + "); ";
        continue;
      }
      const double bound = row.rho + v.width_slope + dc.delta;
      if (row.ev.slope() <= bound) {
        row.note += "growth " + num(row.ev.slope()) +
                    " within the dilated row-weight rate " + num(row.rho) + "; ";
      } else {
        mod = Tri::No;
        if (v.reason.empty())
          v.reason = "growth " + num(row.ev.slope()) +
                     " against " + row.weight_label +
                     " exceeds its dilated rate " + num(row.rho);
      }
    }
    if (mod == Tri::Yes) {
      v.pattern =
          "each family row bounded through its own doubled weight, which stays "
          "strictly below the base by subadditive dilation";
      neg = Tri::Yes;
      for (auto i : counted) {
        auto& row = v.rows[i];
        if (row.zero) continue;
        for (const auto& m : fam) {
          std::vector<double> sum(row.logv.size());
          for (std::size_t j = 0; j < sum.size(); ++j)
            sum[j] = row.logv[j] + m(1.0 / row.cells[j].eps);
          if (!vanish_test_log(sum, dc.o_window, -3.0, dc.o_min_drop).pass) {
            neg = Tri::No;
            v.note += "row " + row.weight_label + " fails decay against exp(-" +
                      m.label + "); ";
            break;
          }
        }
        if (neg == Tri::No) break;
      }
    }
  }

  if (mod == Tri::No) {
    v.cls = AlgebraClass::Neither;
    if (v.reason.empty()) v.reason = "a sampled quantifier row fails the bound";
  } else if (mod == Tri::Unknown) {
    v.cls = AlgebraClass::Inconclusive;
    v.reason = "a sampled quantifier row could not be resolved";
  } else {
    v.moderate = true;
    if (neg == Tri::Yes) {
      v.negligible = true;
      v.cls = AlgebraClass::Negligible;
    } else {
      v.cls = AlgebraClass::Moderate;
      if (neg == Tri::Unknown) v.note += "negligibility unresolved on some rows; ";
    }
  }
  return v;
}

NetVerdict classify_regular(const Net& net, const Weight& w, AlgebraCase kase,
                            SeminormVariant variant, const DecisionConfig& dc) {
  NetVerdict base = classify_net(net, w, kase, variant, dc);
  if (!base.moderate) {
    base.note += "regularity requires a moderate net; ";
    return base;
  }
  const auto counted = counted_rows(base.rows);
  bool reg = false;
  std::string wit, why;
  if (kase == AlgebraCase::Beurling) {
    const auto u = uniform_index_check(
        base.rows, counted, dyadic_grid(dc.forall_lo, dc.forall_hi), dc);
    if (u.ok == Tri::Yes) {
      reg = true;
      wit = "growth index " + num(u.k) + " uniform over the sampled index grid";
    } else {
      why = u.why;
      if (u.ok == Tri::Unknown) base.note += "uniform-index check unresolved; ";
    }
  } else if (kase == AlgebraCase::RoumieuInductive) {
    for (auto i : counted) {
      const auto& row = base.rows[i];
      if (row.zero) {
        reg = true;
        wit = "index " + num(row.index) + " identically zero";
        break;
      }
      if (resolved_row(row, dc) &&
          row.ev.slope() <= base.width_slope + dc.vanish_tol) {
        reg = true;
        wit = "index " + num(row.index) + " with vanishing growth " +
              num(row.ev.slope());
        break;
      }
    }
    if (!reg) why = "every usable seminorm index shows real epsilon-growth";
  } else {
    const auto fam = roumieu_family(w, dc.roumieu_depth);
    for (const auto& m : fam) {
      bool all = true;
      for (auto i : counted) {
        const auto& row = base.rows[i];
        if (row.zero) continue;
        std::vector<double> diff(row.logv.size());
        for (std::size_t j = 0; j < diff.size(); ++j)
          diff[j] = row.logv[j] - m(1.0 / row.cells[j].eps);
        if (!vanish_test_log(diff, dc.o_window, -3.0, dc.o_min_drop).pass) {
          all = false;
          break;
        }
      }
      if (all) {
        reg = true;
        wit = "bound weight " + m.label + " dominates every family row";
        break;
      }
    }
    if (!reg) why = "no constructed bound weight dominates every family row";
  }
  if (reg) {
    base.regular = true;
    base.cls = AlgebraClass::Regular;
    base.witness = wit;
    base.pattern = "one growth bound across the sampled quantifier family";
  } else {
    base.note += "not regular at this sampling: " + why + "; ";
  }
  return base;
}

CrosscheckReport crosscheck_roumieu(const Net& net, const Weight& w,
                                    SeminormVariant variant,
                                    const DecisionConfig& dc) {
  CrosscheckReport r;
  r.inductive = classify_net(net, w, AlgebraCase::RoumieuInductive, variant, dc);
  r.projective = classify_net(net, w, AlgebraCase::RoumieuProjective, variant, dc);
  r.conclusive = r.inductive.cls != AlgebraClass::Inconclusive &&
                 r.projective.cls != AlgebraClass::Inconclusive;
  if (!r.conclusive) {
    r.note = "a presentation is inconclusive; no disagreement claimed";
    return r;
  }
  r.moderate_agree = r.inductive.moderate == r.projective.moderate;
  r.negligible_agree = r.inductive.negligible == r.projective.negligible;
  r.regular_agree = true;
  if (r.inductive.moderate && r.projective.moderate) {
    r.reg_inductive =
        classify_regular(net, w, AlgebraCase::RoumieuInductive, variant, dc);
    r.reg_projective =
        classify_regular(net, w, AlgebraCase::RoumieuProjective, variant, dc);
    r.regular_agree = r.reg_inductive.regular == r.reg_projective.regular;
  }
  r.agree = r.moderate_agree && r.negligible_agree && r.regular_agree;
  r.note = "inductive " + to_string(r.inductive.cls) + ", projective " +
           to_string(r.projective.cls) +
           (r.agree ? "; presentations agree" : "; presentations disagree");
  return r;
}

Verdict negligible_via_l2(const Net& net, const Weight& w, AlgebraCase kase,
                          const DecisionConfig& dc) {
  NetVerdict base = classify_net(net, w, kase, SeminormVariant::L1, dc);
  if (!base.moderate)
    throw std::invalid_argument(
        "the L2 criterion applies to moderate nets; this net classified " +
        to_string(base.cls));
  const auto funcs = realize(net);
  std::vector<double> values;
  values.reserve(funcs.size());
  for (const auto& f : funcs) {
    // Factored against the peak so squares of subnormal-range samples do not
    // flush the whole norm to zero.
    double peak = 0;
    for (const auto& z : f.samples) peak = std::max(peak, std::abs(z));
    if (peak == 0) {
      values.push_back(0);
      continue;
    }
    std::vector<double> sq(f.samples.size());
    for (std::size_t j = 0; j < sq.size(); ++j) {
      double r = std::abs(f.samples[j]) / peak;
      sq[j] = r * r;
    }
    values.push_back(peak * std::sqrt(net.grid.h() * kernels::sum_blocked(sq)));
  }
  Scale sc = make_scale(kase == AlgebraCase::Beurling ? ScaleKind::Beurling
                                                      : ScaleKind::Roumieu,
                        w, dc.roumieu_depth);
  sc.sched = net.sched;
  // Same late-window clamp the evidence rows use: a window covering the whole
  // trace cannot see curvature, and the schedule here is the net's own.
  DecisionConfig dcl = dc;
  dcl.window =
      std::max(2, std::min(dc.window, static_cast<int>(values.size()) / 2));
  return classify_constants(values, sc, dcl);
}

namespace {

EvidenceRow eval_row(const std::vector<GridFunction>& funcs, const Net& net,
                     const Weight& wrow, double index, double klo, double khi,
                     SeminormVariant variant, const Weight& gauge_w,
                     const DecisionConfig& dc) {
  const auto ks = net.sched.ks();
  EvidenceRow row;
  row.index = index;
  row.weight_label = wrow.label;
  row.cells.resize(ks.size());
  for (std::size_t e = 0; e < ks.size(); ++e)
    row.cells[e].eps = EpsSchedule::eps(ks[e]);
  if (index > max_index_for(wrow, net.grid)) {
    for (auto& c : row.cells) c.state = CellState::Overflow;
    row.note = "index above the representable bound " +
               num(max_index_for(wrow, net.grid)) + " for this grid; ";
  } else {
    SeminormSpec spec;
    spec.w = wrow;
    spec.l = index;
    spec.variant = variant;
    spec.k_lo = klo;
    spec.k_hi = khi;
    for (std::size_t e = 0; e < funcs.size(); ++e) {
      auto& cell = row.cells[e];
      try {
        double v = seminorm(funcs[e], spec);
        if (std::isfinite(v))
          cell.value = v;
        else {
          cell.state = CellState::Overflow;
          row.note += "cell marked at eps=" + num(cell.eps) + "; ";
        }
      } catch (const std::exception& ex) {
        cell.state = CellState::Overflow;
        if (row.note.empty()) row.note = std::string(ex.what()) + "; ";
      }
    }
  }
  finish_row(row, gauge_w, net.sched, dc, nullptr);
  return row;
}

}  // namespace

BallVerdict sharp_ball_membership(const Net& net, const Weight& w,
                                  const BeurlingBall& ball,
                                  SeminormVariant variant,
                                  const DecisionConfig& dc) {
  if (ball.region < 1 || ball.region > 8)
    throw std::invalid_argument("ball region must be between 1 and 8");
  if (!(ball.index > 0) || !(ball.decay > 0))
    throw std::invalid_argument("ball index and decay must be positive");
  if (!w.valid()) throw std::invalid_argument("ball needs an evaluable weight");
  const double K = ball.region * net.grid.L / 8.0;
  BallVerdict out;
  if (net.support_lo < -K || net.support_hi > K)
    out.note += "support clipped to the ball region; ";
  out.row = eval_row(realize(net), net, w, ball.index, -K, K, variant, w, dc);
  const auto& row = out.row;
  if (row.zero) {
    out.member = out.conclusive = true;
    out.note += "identically zero; ";
    return out;
  }
  if (row.usable >= 4) {
    if (diverging_down(row.ev, dc)) {
      out.member = out.conclusive = true;
      out.note += "slope steepening without bound; ";
      return out;
    }
    if (resolved_row(row, dc)) {
      out.member = slope_at_most(row.ev, -ball.decay, dc);
      out.conclusive = true;
      out.note += "fitted slope " + num(row.ev.slope()) + " against required -" +
                  num(ball.decay) + "; ";
      return out;
    }
  }
  out.note += "row unresolved at this schedule; ";
  return out;
}

BallVerdict sharp_ball_membership(const Net& net, const Weight& w,
                                  const RoumieuBall& ball,
                                  SeminormVariant variant,
                                  const DecisionConfig& dc) {
  if (!ball.w1.valid() || !ball.w2.valid())
    throw std::invalid_argument("roumieu ball needs two evaluable weights");
  BallVerdict out;
  out.row = eval_row(realize(net), net, ball.w1, 1.0, net.support_lo,
                     net.support_hi, variant, w, dc);
  const auto& row = out.row;
  if (row.zero) {
    out.member = out.conclusive = true;
    out.note += "identically zero; ";
    return out;
  }
  if (row.usable >= 4) {
    std::vector<double> sum(row.logv.size());
    for (std::size_t j = 0; j < sum.size(); ++j)
      sum[j] = row.logv[j] + ball.w2(1.0 / row.cells[j].eps);
    out.otest = vanish_test_log(sum, dc.o_window, -3.0, dc.o_min_drop);
    out.member = out.otest.pass;
    out.conclusive = true;
    out.note += "log seminorm against exp(-" + ball.w2.label + "(1/eps)): " +
                num(out.otest.first) + " -> " + num(out.otest.last) + "; ";
    return out;
  }
  out.note += "row unresolved at this schedule; ";
  return out;
}

UniformBoundReport uniform_projective_bound(const Net& net, const Weight& w,
                                            const Weight& w1,
                                            SeminormVariant variant,
                                            const DecisionConfig& dc) {
  if (!w.valid() || !w1.valid())
    throw std::invalid_argument("uniform bound needs evaluable weights");
  UniformBoundReport rep;
  rep.ok = true;
  const auto fam = roumieu_family(w, dc.roumieu_depth);
  const auto funcs = realize(net);
  for (const auto& m : fam) {
    EvidenceRow row = eval_row(funcs, net, m, 1.0, net.support_lo,
                               net.support_hi, variant, w, dc);
    AxiomEntry e;
    e.pair = row.weight_label + " against o(exp(" + w1.label + "(1/eps)))";
    if (row.zero) {
      e.ok = true;
      e.witness = "identically zero";
    } else if (row.usable >= 4) {
      std::vector<double> diff(row.logv.size());
      for (std::size_t j = 0; j < diff.size(); ++j)
        diff[j] = row.logv[j] - w1(1.0 / row.cells[j].eps);
      const auto o = vanish_test_log(diff, dc.o_window, -3.0, dc.o_min_drop);
      e.ok = o.pass;
      e.witness = "log ratio falls " + num(o.first) + " -> " + num(o.last);
    } else {
      e.ok = false;
      e.witness = "row unresolved at this schedule";
    }
    rep.ok = rep.ok && e.ok;
    rep.rows.push_back(std::move(e));
  }
  return rep;
}

Net combine_nets(const Net& a, const Net& b, const NetOp& op) {
  if (op.kind != NetOp::Product)
    throw std::invalid_argument("binary net combination is product only");
  if (!a.valid() || !b.valid()) throw std::invalid_argument("empty net");
  if (!(a.grid == b.grid))
    throw std::invalid_argument("product nets must share a grid");
  if (a.sched.kmin != b.sched.kmin || a.sched.kmax != b.sched.kmax)
    throw std::invalid_argument("product nets must share an epsilon schedule");
  Net out;
  out.grid = a.grid;
  out.sched = a.sched;
  out.support_lo = std::max(a.support_lo, b.support_lo);
  out.support_hi = std::min(a.support_hi, b.support_hi);
  if (out.support_lo > out.support_hi) out.support_lo = out.support_hi = 0;
  out.label = "(" + a.label + ")*(" + b.label + ")";
  auto ga = a.generator, gb = b.generator;
  const double lo = out.support_lo, hi = out.support_hi;
  std::string lab = out.label;
  out.generator = [ga, gb, lo, hi, lab](double eps) {
    GridFunction fa = ga(eps);
    const GridFunction fb = gb(eps);
    for (std::size_t j = 0; j < fa.samples.size(); ++j)
      fa.samples[j] *= fb.samples[j];
    fa.support_lo = lo;
    fa.support_hi = hi;
    fa.label = lab + " eps=" + num(eps);
    return fa;
  };
  return out;
}

Net combine_nets(const Net& a, const NetOp& op) {
  if (!a.valid()) throw std::invalid_argument("empty net");
  Net out;
  out.grid = a.grid;
  out.sched = a.sched;
  out.support_lo = a.support_lo;
  out.support_hi = a.support_hi;
  auto g = a.generator;
  switch (op.kind) {
    case NetOp::Derivative: {
      out.label = "d/dx(" + a.label + ")";
      const double lo = a.support_lo, hi = a.support_hi;
      std::string lab = out.label;
      out.generator = [g, lo, hi, lab](double eps) {
        GridFunction d = spectral_derivative(g(eps));
        double peak = 0;
        for (const auto& z : d.samples) peak = std::max(peak, std::abs(z));
        if (peak > 0)
          for (auto& z : d.samples)
            if (std::abs(z) < 1e-13 * peak) z = 0;
        d.support_lo = lo;
        d.support_hi = hi;
        d.label = lab + " eps=" + num(eps);
        return d;
      };
      return out;
    }
    case NetOp::Translate: {
      const double lo = a.support_lo + op.shift, hi = a.support_hi + op.shift;
      if (lo < -a.grid.L || hi > a.grid.L)
        throw WindowError("translated support [" + num(lo) + ", " + num(hi) +
                          "] leaves the window [-" + num(a.grid.L) + ", " +
                          num(a.grid.L) + ")");
      out.support_lo = lo;
      out.support_hi = hi;
      out.label = "shift(" + a.label + ", " + num(op.shift) + ")";
      const double sh = op.shift;
      out.generator = [g, sh](double eps) { return translate(g(eps), sh); };
      return out;
    }
    case NetOp::Scalar: {
      if (!op.scalar)
        throw std::invalid_argument("scalar net combination needs a multiplier");
      out.label = "scale(" + a.label +
                  (op.label.empty() ? std::string() : ", " + op.label) + ")";
      auto sc = op.scalar;
      std::string lab = out.label;
      out.generator = [g, sc, lab](double eps) {
        GridFunction f = g(eps);
        const double s = sc(eps);
        for (auto& z : f.samples) z *= s;
        f.label = lab + " eps=" + num(eps);
        return f;
      };
      return out;
    }
    default:
      throw std::invalid_argument("product combination needs two nets");
  }
}

}  // namespace ultrascale
