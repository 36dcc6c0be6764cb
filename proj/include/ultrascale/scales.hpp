#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ultrascale/config.hpp"
#include "ultrascale/trend.hpp"
#include "ultrascale/weights.hpp"

namespace ultrascale {

enum class ScaleKind { Beurling, Roumieu };

// Asymptotic scale: a family of strictly decreasing null functions of eps.
// Beurling members are a_k(eps) = exp(-k w(1/eps)) indexed by positive reals
// (sampled dyadically); Roumieu members are a_w'(eps) = exp(-w'(1/eps)) over
// a constructed chain of strictly weaker weights.  Members are handled in
// log form throughout: the interesting ones underflow doubles.
struct Scale {
  ScaleKind kind = ScaleKind::Beurling;
  Weight w;
  std::vector<double> indices;  // beurling index samples
  std::vector<Weight> family;   // roumieu weights, ascending strength
  EpsSchedule sched;

  int size() const;
  double log_member(int i, double eps) const;
  // Beurling only: the index set is all positive reals, so witnesses may use
  // indices outside the sampled list.
  double log_member_at(double k, double eps) const;
  std::string index_label(int i) const;
};

Scale make_scale(ScaleKind kind, const Weight& w, int roumieu_depth = 4);

struct AxiomEntry {
  std::string pair;
  std::string witness;
  bool ok = false;
};

// Finite-sample audit of the two scale conditions plus strict decrease:
// ordering (stronger index's member vanishes against the weaker's) and the
// product condition, with the witness exhibited constructively in each
// entry.  Ordering over a single member is vacuous and flagged as such.
struct ScaleAxiomReport {
  bool decreasing_ok = false;
  bool ordering_ok = false;
  bool ordering_vacuous = false;
  bool product_ok = false;
  std::vector<AxiomEntry> ordering;
  std::vector<AxiomEntry> product;
  std::string note;
  bool pass() const { return decreasing_ok && ordering_ok && product_ok; }
};

ScaleAxiomReport check_scale_axioms(const Scale& s,
                                    const DecisionConfig& dc = {});

// Least-squares slope of log(values) against w(1/eps) over the trailing
// window of the schedule.  The finite-sample stand-in for every
// "o(exp(+-k w(1/eps)))" condition downstream.
struct ExponentFit {
  double slope = 0;
  double intercept = 0;
  double rms = 0;
  int window = 0;
  double delta = 0;  // decision margin the verdicts will apply
  bool reliable = false;
  std::string reason;
};

ExponentFit fit_exponent(std::span<const double> values, const Weight& w,
                         const EpsSchedule& sched = {},
                         const DecisionConfig& dc = {});

enum class NetClass { Moderate, Negligible, Neither, Inconclusive };

struct Verdict {
  NetClass cls = NetClass::Inconclusive;
  ExponentFit fit;
  SlopeEvidence evidence;
  std::string pattern;  // quantifier pattern satisfied, human-readable
  std::string reason;   // set when Inconclusive
  DecisionConfig config;
};

// Classification of a net of constants against the scale.  Beurling
// (projective): Moderate needs one sampled index controlling the growth,
// Negligible needs decay beyond every sampled index or a demonstrably
// steepening slope.  Roumieu (inductive): Moderate needs vanishing slope,
// Negligible a slope below -delta.  Negligible is only granted on top of
// Moderate.
Verdict classify_constants(std::span<const double> magnitudes, const Scale& s,
                           const DecisionConfig& dc = {});
Verdict classify_constants(std::span<const std::complex<double>> net,
                           const Scale& s, const DecisionConfig& dc = {});

struct ModerateEntry {
  std::string index;
  double fitted = 0;    // growth exponent of F(1/a) against the index gauge
  std::string witness;  // member certifying F(1/a_l) = o(1/a_m)
  int points = 0;
  bool range_limited = false;  // too little of the schedule was evaluable
  bool ok = false;
};

// Def-style moderateness of a scalar function over the scale, by sampled
// witnesses, plus a log-log polynomial-degree fit: a moderate function must
// show a finite degree.
struct ModerateFunctionReport {
  bool moderate = false;
  std::vector<ModerateEntry> entries;
  LinFit degree;
  double degree_early = 0, degree_late = 0;
  bool degree_finite = false;
  std::string note;
};

ModerateFunctionReport check_moderate_function(
    const std::function<double(double)>& F, const Scale& s,
    const DecisionConfig& dc = {});

}
