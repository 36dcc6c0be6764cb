#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ultrascale/weights.hpp"

namespace ultrascale {

struct ConstructionOptions {
  int max_breakpoints = 24;
  double quad_rel_tol = 1e-8;
  AuditConfig audit;  // t_cap here bounds threshold searches
};

// Integral smoothing: averages w over a doubling window.  Output is sandwiched
// between w/2 and w, increases, and has nonincreasing slope-from-origin.
// Certified range halves because each evaluation reads up to 2t.
Weight regularize(const Weight& w);

// Least concave majorant of the audit-grid samples, anchored at the origin.
// Piecewise linear, identical to the input at hull vertices, at most twice
// the regularized input anywhere on the grid.
Weight concave_envelope(const Weight& w);

// envelope(regularize(w)): the canonical concave upgrade every piecewise
// construction assumes of its base.
Weight normalize_weight(const Weight& w);

// Outcome of a breakpoint construction.  complete is false when t_cap ran
// out before the requested depth; the object is still a valid weight, with
// pieces certified up to certified_to.
struct ConstructionResult {
  Weight w;
  bool complete = false;
  int depth = 0;
  double certified_to = 0;
  std::string note;
};

// Strictly stronger weight: w' = n w bridged by affine pieces, thresholds
// T_n chosen by doubling so the tail integral beyond T_n is at most A/2^n.
// Base must be nondecreasing with w(t)/t nonincreasing on the grid.
ConstructionResult build_stronger(const Weight& w,
                                  const ConstructionOptions& opts = {});

// Strictly weaker weight: w'' = w/n bridged by affine pieces, thresholds
// placed where w / log(1+t) stays above n^2.  Same base preconditions.
ConstructionResult build_weaker(const Weight& w,
                                const ConstructionOptions& opts = {});

enum class CombineRule { GeometricMean, Join };

// GeometricMean: sqrt(w1 w2) for a strictly ordered pair (w1 strictly below
// w2), subadditive by Cauchy-Schwarz.  Join: stronger-than construction on
// the normalized pointwise sup, dominating both inputs.
Weight combine(const Weight& w1, const Weight& w2, CombineRule rule,
               const ConstructionOptions& opts = {});

// One weight dominating every listed one while staying strictly below w.
// Pieces follow the listed weights, bridged at thresholds where consecutive
// entries are ordered under w/(n+1); past the list the geometric mean of the
// last entry and w takes over.
ConstructionResult dominate_sequence(const std::vector<Weight>& ws,
                                     const Weight& w,
                                     const ConstructionOptions& opts = {});

enum class WitnessDirection { Growth, Decay };

struct ProbeStatus {
  double k = 0;
  int verdict = 0;  // +1 controlled, 0 flat, -1 diverges
};

// Certificate that a function h = exp(log_h) is controlled by the weight
// class of w: for growth, h <= C exp(w') for a constructed strictly weaker
// w' with h / exp(w') -> 0 along the tail; for decay, h falls under
// exp(-w').  The function is supplied in log form so that fast decay stays
// representable; -inf values are floored.  Probes at fixed k document where
// h sits against exp(+-k w); for growth a diverging probe forces rejection,
// since any weaker witness eventually sits below k w.
struct SmallOWitness {
  bool accepted = false;
  double rejected_at = 0;  // largest probe k that definitely diverges
  std::vector<ProbeStatus> probes;
  Weight witness;
  double log_bound = 0;  // sup over grid of the controlled difference
  bool certificate_ok = false;
  std::string note;
};

SmallOWitness witness_small_o(const std::function<double(double)>& log_h,
                              const Weight& w, WitnessDirection dir,
                              const ConstructionOptions& opts = {});

// Ascending chain of strictly weaker weights below w: an iterated weaker
// chain at the bottom, geometric-mean refinements toward w at the top.
std::vector<Weight> roumieu_family(const Weight& w, int depth = 4);

}
