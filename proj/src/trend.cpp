#include "ultrascale/trend.hpp"

#include <algorithm>
#include <cmath>

namespace ultrascale {

std::vector<double> dyadic_grid(int lo, int hi) {
  std::vector<double> g;
  for (int j = lo; j <= hi; ++j) g.push_back(std::exp2(static_cast<double>(j)));
  return g;
}

std::vector<int> EpsSchedule::ks() const {
  std::vector<int> v;
  for (int k = kmin; k <= kmax; ++k) v.push_back(k);
  return v;
}

LinFit fit_line(std::span<const double> x, std::span<const double> y) {
  LinFit f;
  f.n = static_cast<int>(std::min(x.size(), y.size()));
  if (f.n < 2) {
    f.degenerate = true;
    if (f.n == 1) f.intercept = y[0];
    return f;
  }
  auto [ymin, ymax] = std::minmax_element(y.begin(), y.begin() + f.n);
  if (*ymin == *ymax) {
    f.intercept = *ymin;
    return f;
  }
  double sx = 0, sy = 0;
  for (int i = 0; i < f.n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  double mx = sx / f.n, my = sy / f.n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < f.n; ++i) {
    double dx = x[i] - mx;
    sxx += dx * dx;
    sxy += dx * (y[i] - my);
  }
  if (sxx == 0) {
    f.degenerate = true;
    f.intercept = my;
    return f;
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (int i = 0; i < f.n; ++i) {
    double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / f.n);
  return f;
}

namespace {

OTestResult vanish_core(std::span<const double> v, int window, bool logdom,
                        double final_thresh, double min_drop) {
  OTestResult r;
  int n = static_cast<int>(v.size());
  if (n < 4) {
    r.note = "too few points";
    return r;
  }
  int w = std::min(window, n);
  r.window = w;
  auto tail = v.subspan(v.size() - static_cast<std::size_t>(w));
  r.first = tail[0];
  r.last = tail[w - 1];
  r.nonincreasing = true;
  for (int i = 1; i < w; ++i) {
    // Slack tolerates exact plateaus and roundoff, not real growth.
    double slack = logdom ? 1e-9 : 1e-9 * (1.0 + std::fabs(tail[i - 1]));
    if (tail[i] > tail[i - 1] + slack) {
      r.nonincreasing = false;
      r.note = "tail increases at offset " + std::to_string(i);
      break;
    }
  }
  // A truncated piecewise construction ends in an exact plateau, so a drop
  // inside the window is not the only admissible evidence: a factor-20 fall
  // across the whole trace counts too.  A constant sequence passes neither.
  if (logdom) {
    r.dropped = (r.first - r.last) >= min_drop;
    r.global_drop = (v[0] - r.last) >= std::log(20.0);
    r.small_final = r.last <= final_thresh;
  } else {
    r.dropped = r.last <= r.first * (1.0 - min_drop);
    r.global_drop = v[0] > 0 && r.last <= v[0] / 20.0;
    r.small_final = r.last < final_thresh;
  }
  r.pass = r.nonincreasing && (r.dropped || r.global_drop) && r.small_final;
  if (!r.pass && r.note.empty()) {
    if (!r.dropped && !r.global_drop)
      r.note = "no net decrease across window or trace";
    else if (!r.small_final)
      r.note = "final value above threshold";
  }
  return r;
}

}

OTestResult vanish_test(std::span<const double> vals, int window,
                        double final_thresh, double min_drop) {
  return vanish_core(vals, window, false, final_thresh, min_drop);
}

OTestResult vanish_test_log(std::span<const double> logvals, int window,
                            double log_final_thresh, double min_log_drop) {
  return vanish_core(logvals, window, true, log_final_thresh, min_log_drop);
}

SlopeEvidence analyze_slope(std::span<const double> gauge,
                            std::span<const double> logvals, int window) {
  SlopeEvidence e;
  std::size_t n = std::min(gauge.size(), logvals.size());
  e.usable = static_cast<int>(n);
  if (n == 0) return e;
  std::size_t w = std::min<std::size_t>(window, n);
  e.late = fit_line(gauge.subspan(n - w), logvals.subspan(n - w));
  // Early window: leading points, at least 3, capped at the window size.
  std::size_t ew = n > w ? std::min<std::size_t>(w, n - w / 2) : n;
  if (ew < 3) ew = std::min<std::size_t>(3, n);
  e.early = fit_line(gauge.first(ew), logvals.first(ew));
  e.short_window = (n < 2 * w);
  return e;
}

bool slope_at_most(const SlopeEvidence& e, double target,
                   const DecisionConfig& dc) {
  if (e.late.degenerate && e.late.n == 0) return false;
  return e.slope() <= target - dc.margin(target);
}

bool vanishing_slope(const SlopeEvidence& e, const DecisionConfig& dc) {
  if (e.late.n < 2) return false;
  double s = e.slope();
  if (s <= dc.vanish_tol) return true;
  if (e.short_window && e.early.n == e.late.n) return false;
  return s <= dc.vanish_cap && e.early.slope > 0 &&
         s <= dc.vanish_shrink * e.early.slope;
}

bool diverging_down(const SlopeEvidence& e, const DecisionConfig& dc) {
  if (e.late.n < 2) return false;
  double s = e.slope();
  if (s > -2.0 * dc.delta) return false;
  // Steepening requires the early window to already point down.
  return e.early.slope <= -dc.delta && s <= dc.diverge_grow * e.early.slope;
}

bool diverging_up(const SlopeEvidence& e, const DecisionConfig& dc) {
  if (e.late.n < 2) return false;
  double s = e.slope();
  if (s < 2.0 * dc.delta) return false;
  return s >= dc.diverge_grow * e.early.slope && e.early.slope > 0;
}

}
