#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ultrascale/config.hpp"
#include "ultrascale/scales.hpp"
#include "ultrascale/spectral.hpp"
#include "ultrascale/trend.hpp"
#include "ultrascale/weights.hpp"

namespace ultrascale {

// The two algebra presentations plus the projective form of the Roumieu
// case, which quantifies over constructed weights instead of indices.
enum class AlgebraCase { Beurling, RoumieuInductive, RoumieuProjective };

enum class AlgebraClass { Moderate, Negligible, Regular, Neither, Inconclusive };

std::string to_string(AlgebraCase c);
std::string to_string(AlgebraClass c);

// A net of grid functions indexed by the epsilon schedule.  The generator
// must be a pure function of eps; support_lo/hi bound the support uniformly
// over the schedule (full window for band-limited nets).
struct Net {
  std::function<GridFunction(double)> generator;
  EpsSchedule sched;
  GridSpec grid;
  double support_lo = 0, support_hi = 0;
  std::string label;

  bool valid() const { return static_cast<bool>(generator); }
};

// Catalog nets.  Schedules are pinned where the construction forces them:
// the mollifier net needs eps <= 2^-5 for a clean window edge and
// 2/eps <= xi_max for resolution; the slowed net inherits both through
// eta(eps) = sqrt(eps); the embedded net cuts the bump spectrum at 2/eps.
Net planted_net(double k0, const Weight& w, GridSpec g = {},
                EpsSchedule sched = {4, 15});
Net decay_net(double p, const Weight& w, GridSpec g = {},
              EpsSchedule sched = {4, 13});
Net zero_net(GridSpec g = {}, EpsSchedule sched = {4, 15});
Net constant_net(const SampledFunction& f, GridSpec g = {},
                 EpsSchedule sched = {4, 15});
Net mollifier_net(GridSpec g = {}, EpsSchedule sched = {5, 10});
Net slowed_mollifier_net(GridSpec g = {}, EpsSchedule sched = {12, 21});
Net embedded_net(const SampledFunction& f, GridSpec g = {},
                 EpsSchedule sched = {6, 10});

// Parses "planted:2", "decay:1.3", "zero", "bump", "mollifier", "slowed",
// "embedded".  Throws ConfigError on an unknown name or bad parameter.
Net catalog_net(const std::string& spec, const Weight& w, GridSpec g = {});

enum class CellState { Ok, Overflow, Underflow };

struct EvidenceCell {
  double eps = 0;
  double value = 0;
  CellState state = CellState::Ok;
};

// One sampled quantifier row: seminorm index over the base weight for the
// index presentations, a constructed family member at index 1 for the
// projective one.  Fits run over the leading run of clean cells; a marked
// cell ends the run but does not discard the row.
struct EvidenceRow {
  double index = 1.0;
  std::string weight_label;
  std::vector<EvidenceCell> cells;
  int usable = 0;
  bool zero = false;           // every clean cell is exactly zero
  bool range_limited = false;  // clean run shorter than preferred
  ExponentFit fit;
  SlopeEvidence ev;
  std::vector<double> gauge, logv;  // clean-prefix data the fits ran on
  double rho = 0;  // projective: growth rate of the dilated row weight
  double witness = 0;
  bool witness_found = false;
  std::string note;
};

// Roumieu-inductive evidence: for each counted growth index k, the witness
// seminorm index below it.
struct KCell {
  double k = 0;
  double witness = 0;
  bool found = false;
  std::string note;
};

struct NetVerdict {
  AlgebraClass cls = AlgebraClass::Inconclusive;
  AlgebraCase kase = AlgebraCase::Beurling;
  SeminormVariant variant = SeminormVariant::L1;
  bool moderate = false;
  bool negligible = false;
  bool regular = false;
  std::vector<EvidenceRow> rows;
  std::vector<KCell> k_cells;
  std::vector<double> excluded;  // growth indices under the resolution floor
  double width_slope = 0;        // structural allowance actually applied
  std::string pattern, reason, note, witness;
  DecisionConfig config;
};

// Growth indices below this slope cannot be discriminated at the given
// schedule: integral seminorm variants carry a spectral-width factor that is
// polynomial in 1/eps, and the smallest sampled seminorm index contributes
// up to twice its own value (subadditive doubling).  Counted "forall k"
// grids start above the floor; the trimming is recorded in the verdict.
double width_allowance(const Net& net, const Weight& w, SeminormVariant v);

// Seminorm evidence table over the sampled quantifier grid, exponent fits
// per row, quantifier pattern applied with margin.  alt_uniform_index also
// evaluates the swapped-order moderateness pattern (one growth index for
// every seminorm index) and records both readings when they differ; the
// printed-order verdict is always the one returned.
NetVerdict classify_net(const Net& net, const Weight& w, AlgebraCase kase,
                        SeminormVariant variant = SeminormVariant::L1,
                        const DecisionConfig& dc = {},
                        bool alt_uniform_index = false);

// Regularity on top of moderateness: one uniform growth exponent across the
// seminorm index grid (index presentations) or one bound weight dominating
// every family row (projective).  Nets that are not Moderate keep their
// classification and a note.
NetVerdict classify_regular(const Net& net, const Weight& w, AlgebraCase kase,
                            SeminormVariant variant = SeminormVariant::L1,
                            const DecisionConfig& dc = {});

struct CrosscheckReport {
  NetVerdict inductive, projective;
  NetVerdict reg_inductive, reg_projective;
  bool conclusive = false;  // false when either side is Inconclusive
  bool moderate_agree = false;
  bool negligible_agree = false;
  bool regular_agree = false;
  bool agree = false;
  std::string note;
};

// Runs both Roumieu presentations and compares class flags; regularity is
// compared only when both sides are Moderate.  An Inconclusive side is
// reported as such, never as disagreement.
CrosscheckReport crosscheck_roumieu(const Net& net, const Weight& w,
                                    SeminormVariant variant = SeminormVariant::L1,
                                    const DecisionConfig& dc = {});

// Plain spatial L2 norms of the net classified against the case's scale of
// constants.  Requires the net itself to be Moderate (throws
// std::invalid_argument otherwise); on catalog nets the verdict's
// Negligible flag must match classify_net's.
Verdict negligible_via_l2(const Net& net, const Weight& w, AlgebraCase kase,
                          const DecisionConfig& dc = {});

// Sharp-topology balls.  Beurling: region picks the nested interval
// [-region L/8, region L/8], index is the seminorm index, decay the required
// epsilon-decay exponent.  Roumieu: two constructed weights strictly below
// the base, seminorm weight w1 at index 1 against decay member exp(-w2).
struct BeurlingBall {
  int region = 8;
  double index = 1;
  double decay = 1;
};
struct RoumieuBall {
  Weight w1, w2;
};

struct BallVerdict {
  bool member = false;
  bool conclusive = false;  // false when the fit could not resolve the row
  EvidenceRow row;
  OTestResult otest;
  std::string note;
};

BallVerdict sharp_ball_membership(const Net& net, const Weight& w,
                                  const BeurlingBall& ball,
                                  SeminormVariant variant = SeminormVariant::L1,
                                  const DecisionConfig& dc = {});
BallVerdict sharp_ball_membership(const Net& net, const Weight& w,
                                  const RoumieuBall& ball,
                                  SeminormVariant variant = SeminormVariant::L1,
                                  const DecisionConfig& dc = {});

// Direct uniform bound check for the projective rows: every family row's
// values against o(exp(w1(1/eps))), with a caller-chosen bound weight.
struct UniformBoundReport {
  std::vector<AxiomEntry> rows;
  bool ok = false;
};
UniformBoundReport uniform_projective_bound(const Net& net, const Weight& w,
                                            const Weight& w1,
                                            SeminormVariant variant = SeminormVariant::L1,
                                            const DecisionConfig& dc = {});

struct NetOp {
  enum Kind { Product, Derivative, Translate, Scalar };
  Kind kind = Product;
  double shift = 0;
  std::function<double(double)> scalar;  // eps -> multiplier
  std::string label;
};

// Product requires matching grids and schedules; translate requires the
// shifted support to stay inside the window (WindowError otherwise).
// Derivative goes through the spectral profile and keeps the declared
// support; samples under the noise floor are snapped to exact zero, same
// policy as the spectrum.
Net combine_nets(const Net& a, const Net& b, const NetOp& op);
Net combine_nets(const Net& a, const NetOp& op);

}
