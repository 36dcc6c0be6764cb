#pragma once

#include <span>
#include <string>

#include "ultrascale/config.hpp"

namespace ultrascale {

struct LinFit {
  double slope = 0;
  double intercept = 0;
  double rms = 0;  // residual root mean square
  int n = 0;
  bool degenerate = false;  // fewer than 2 points or zero abscissa spread
};

// Least squares line through (x_i, y_i).  An exactly constant y short
// circuits to slope 0 so plateaus are not polluted by roundoff.
LinFit fit_line(std::span<const double> x, std::span<const double> y);

// Finite-sample reading of "sequence tends to zero".  pass requires a
// nonincreasing tail, a small final value, and decrease evidence: either a
// net drop inside the window or a factor-20 fall across the whole trace
// (truncated constructions end in exact plateaus).  A constant sequence has
// neither kind of decrease and is rejected even when small.
struct OTestResult {
  bool pass = false;
  bool nonincreasing = false;
  bool dropped = false;
  bool global_drop = false;
  bool small_final = false;
  double first = 0;
  double last = 0;
  int window = 0;
  std::string note;
};

// Linear domain: vals > 0, thresholds on the values themselves.
OTestResult vanish_test(std::span<const double> vals, int window = 8,
                        double final_thresh = 0.05, double min_drop = 0.02);

// Log domain: vals are logs, final threshold is log(0.05)-style, drop is an
// additive log decrease.  Use for exponentially small data.
OTestResult vanish_test_log(std::span<const double> logvals, int window = 8,
                            double log_final_thresh = -3.0,
                            double min_log_drop = 0.02);

// Tail slope of logvals against gauge, with an early-window fit kept for
// trend-of-the-trend decisions.
struct SlopeEvidence {
  LinFit late;
  LinFit early;
  int usable = 0;
  bool short_window = false;  // early and late windows overlap heavily
  double slope() const { return late.slope; }
};

SlopeEvidence analyze_slope(std::span<const double> gauge,
                            std::span<const double> logvals, int window = 12);

// slope <= target - margin(target).
bool slope_at_most(const SlopeEvidence& e, double target,
                   const DecisionConfig& dc);

// Accepts slope tending to zero from above: either already within
// vanish_tol, or small and demonstrably shrinking window over window.
// Negative slopes pass outright.
bool vanishing_slope(const SlopeEvidence& e, const DecisionConfig& dc);

// Slope clearly negative and steepening: late <= -2 delta, early already
// below -delta, late at least diverge_grow times the early slope.
bool diverging_down(const SlopeEvidence& e, const DecisionConfig& dc);

// Slope growing without bound: late positive and at least diverge_grow
// times the early slope, beyond any margin.
bool diverging_up(const SlopeEvidence& e, const DecisionConfig& dc);

}
