#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ultrascale/algebra.hpp"
#include "ultrascale/scales.hpp"
#include "ultrascale/spectral.hpp"
#include "ultrascale/weights.hpp"

namespace ultrascale {

// Distribution catalog.  Every member has an exact pairing <T, rho> against
// a grid function: point evaluation, signed derivative evaluation, half-line
// integral, or inner product.
enum class DistKind { Delta, DeltaDerivative, Heaviside, Density };

struct DistributionSpec {
  DistKind kind = DistKind::Delta;
  int order = 0;          // derivative order, 1..4
  GridFunction density;   // Density only; must live on the pairing grid
  std::string label;
  bool valid() const;
};

DistributionSpec dist_delta();
DistributionSpec dist_delta_derivative(int m);
DistributionSpec dist_heaviside();
DistributionSpec dist_density(GridFunction f);

// <T, rho>.  Delta reads rho at 0 by cubic interpolation (a grid node, so
// the interpolation error against the raw sample is recorded as exactly
// what it is); derivative orders go through the transform; heaviside is the
// half-line trapezoid; densities pair in space.  Linear in rho.
double exact_pair(const DistributionSpec& T, const GridFunction& rho,
                  double* interp_error = nullptr);

// Pairing grid for embeddings: eps >= 8h caps the schedule at eps = 2^-10.
GridSpec embed_grid();
EpsSchedule embed_schedule();

// The net (T star phi_eps) with phi the convolution kernel built for w,
// synthesized in frequency as T^(xi) hat(eps xi) (heaviside goes through the
// kernel's cumulative integral instead).  The symbol never exceeds 1, so
// every seminorm row is dominated by the source spectrum row; that
// certificate stands in for a full moderateness run.  Schedule entries with
// eps < 8h are dropped and reported through `warning`.
Net embed(const DistributionSpec& T, const Weight& w, GridSpec g = embed_grid(),
          EpsSchedule sched = embed_schedule(), std::string* warning = nullptr);

// A certified test function: the closed form, its samples on the pairing
// grid, the transform on that grid, and the recorded membership verdict for
// the case's class.  spectrum carries relative accuracy when the function
// was constructed in frequency (products of transforms lose no absolute
// precision, unlike sums); a transform recomputed from samples is floored at
// 1e-13 of its peak like every measured spectrum.
struct TestFunction {
  SampledFunction f;
  GridFunction on_grid;
  std::vector<std::complex<double>> spectrum;
  MembershipVerdict membership;
  std::string label;
};

// K-fold convolution of one mass-normalized gevrey bump of the given
// halfwidth, shifted to center: spectrum is the K-th power of the single
// bump transform, so the decay rate scales with K sqrt(halfwidth) while the
// support stays at K halfwidth.  factors must be even (keeps the power of
// the oscillating transform a valid spectrum).  The workhorse behind the
// Beurling test family: rates well above every probed membership index are
// reachable inside the window.
TestFunction chain_test_function(double halfwidth, int factors, double center,
                                 const GridSpec& g, const Weight& w);

// Default test family.  Roumieu: five gevrey bumps at varied widths and
// centers (single Fourier rate near 2.23, stable at the low probed indices
// only).  Beurling: five iterated bump convolutions with rates near 13,
// far above every probed membership index, supported inside [-2, 2].
// Membership runs on the default grid; samples land on `pairing_grid`.
// Results are cached per (weight, case, grid, count).
std::vector<TestFunction> default_test_set(const Weight& w, ScaleKind kase,
                                           const GridSpec& pairing_grid,
                                           int count = 5);

enum class AssociationLevel { None, Simple, Strong, Strict };
std::string to_string(AssociationLevel level);

// One pairing-difference trace |<g_eps - T, rho>|.  Values below snap_rel of
// the trace peak are exact zeros: the pairing is a difference of O(1) sums,
// so smaller readings are cancellation noise.  prefix counts the leading
// nonzero cells; fits run on the prefix against w(1/eps).
struct PairingTrace {
  std::string rho_label;
  std::vector<double> eps;
  std::vector<double> values;
  int prefix = 0;
  bool all_zero = false;
  bool zero_tail = false;  // trailing zeros after the prefix
  // Whether trailing zeros are structural (the integrand vanishes on the
  // untouched band) rather than readings snapped at the cancellation floor.
  // Structural zeros certify every sampled rate; snapped ones only say the
  // value fell below measurement resolution, so rate evidence must come
  // from the live prefix.
  bool exact_zeros = false;
  ExponentFit fit;
  SlopeEvidence ev;
  bool simple = false;
  bool strict = false;
  double strong_b = 0;  // largest sampled decay index this trace supports
  std::string note;
};

struct AssociateConfig {
  DecisionConfig dc;
  // Strictness demands a definite rate: late slope at or below -strict_floor
  // with no rate stall (late flattening under flatten_ratio of the early
  // slope means the decay is running on a slower clock than the ring gauge).
  // The floor sits above the stall band of slowed counterexamples, whose
  // late slopes land near -0.1 on reachable schedules, and far below any
  // embedding rate.
  double strict_floor = 0.12;
  double flatten_ratio = 0.6;
  double snap_rel = 1e-13;
  // Extra strong-witness weights tried before the constructed family.
  std::vector<Weight> witness_weights;
};

struct AssociationReport {
  AssociationLevel level = AssociationLevel::None;
  bool simple = false;
  bool strong = false;
  bool strict = false;
  double decay_index = 0;  // beurling strong witness b
  Weight witness_weight;   // roumieu strong witness; valid() when constructed
  std::vector<PairingTrace> traces;
  int dropped = 0;  // test functions refused for failed certification
  std::string note;
};

// Simple, strong, and strict association of the net to T over the certified
// test set.  Simple is the bare trend test; strong searches one decay index
// b (beurling) or one constructed weight omega_b strictly below w (roumieu)
// covering every trace; strict needs the definite-rate reading per trace.
// Strict implies strong implies simple on every report.  Nets labeled as the
// embedding of T pair symbolically (exact difference in frequency); other
// nets go through the transform of their samples.  Uncertified test
// functions are dropped; an empty certified set throws invalid_argument.
AssociationReport associate(const Net& net, const DistributionSpec& T,
                            const Weight& w, ScaleKind kase,
                            const std::vector<TestFunction>& tests,
                            const AssociateConfig& cfg = {});

// eta(eps) solving w1(1/eps) = w(1/eta): closed form for power weights,
// monotone bisection otherwise.  eta(eps) >= eps on the schedule whenever
// w1 sits below w there.
double slowdown_eta(const Weight& w, const Weight& w1, double eps);

// The slowed net eps -> net sample at eta(eps).  Requires the certified
// strict inequality w1 << w; the schedule keeps exactly the entries whose
// eta lands inside the source schedule's range.
Net slowdown(const Net& net, const Weight& w, const Weight& w1);

struct ExperimentCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Hypotheses are certified before any conclusion is tested; with
// hypotheses_met false the conclusion list stays empty and the report never
// claims the theorem.
struct ExperimentReport {
  std::string name;
  bool hypotheses_met = false;
  bool conclusion_pass = false;
  std::vector<ExperimentCheck> hypotheses;
  std::vector<ExperimentCheck> conclusions;
  std::string note;
  bool pass() const { return hypotheses_met && conclusion_pass; }
};

struct ExperimentOptions {
  Weight w;          // base weight; power(1/2) when left invalid
  Weight w1;         // slower weight for the slowing-down map; power(1/4)
  Weight omega_inf;  // r-strong experiment; power(1/8)
  Weight omega_b;    // r-strong experiment; power(1/4)
  bool negative_control = false;  // strict experiment: run the slowed net
  bool rough_density = false;     // beurling experiment: polynomial-decay density
};

// Regularity-comparison experiments by name: "beurling-7.1",etc
// "roumieu-counterexample-7.2", "roumieu-strict-7.3", "r-strong-7.5" (bare
// "7.1".."7.5" accepted).  Each instantiates the hypotheses on catalog
// objects, certifies them, and only then tests the conclusion as a
// measurable Fourier-decay statement.
ExperimentReport comparison_experiment(const std::string& name,
                                       const ExperimentOptions& opt = {});

struct EqualityReport {
  std::string mode;
  bool hypotheses_met = false;
  bool zero = false;
  std::string verdict;
  std::vector<ExperimentCheck> checks;
  std::string note;
};

// Translation criterion: translate(h) - net negligible for every sampled
// shift, then net minus the constant net g_eps(0) negligible; verdict
// "equals the constant net".  A shift where invariance fails reports
// hypotheses not met.
EqualityReport equality_translation(const Net& net, const Weight& w,
                                    ScaleKind kase,
                                    const std::vector<double>& shifts,
                                    const DecisionConfig& dc = {});

// Pairing criteria on a uniformly supported net: catalog pairings negligible
// together with self-pairing ||h_eps||_2^2 negligible force the zero
// verdict; negligible pairings with a non-negligible self-pairing are
// reported nonzero.  The regular route requires a Regular net, drops the
// self-pairing hypothesis, and records the derived self-pairing bound
// o(exp((-a + h) w(1/eps))) as a consistency check instead.
EqualityReport equality_pairing(const Net& net, const Weight& w,
                                ScaleKind kase, bool regular_route = false,
                                const DecisionConfig& dc = {});

// Band-limited density: inverse transform of a plateau window in frequency,
// exactly 1 on |xi| <= inner, exactly 0 beyond outer.  The spatial profile
// is a spike of width ~1/inner with gevrey tails, so the window edge stays
// clean at every schedule entry.
DistributionSpec band_density(double inner, double outer,
                              GridSpec g = embed_grid());

// Exemplar nets shared by the experiments, the CLI, and the tests.
// Difference of two distinct convolution kernels: one ramps its symbol off
// over [1, 2], the other over [1, 3].  Catalog pairings vanish at the test
// functions' own rate while the self-pairing grows like 1/eps.
Net two_mollifier_difference(GridSpec g = {}, EpsSchedule sched = {5, 10});

// c_eps + a_eps * (gevrey bump of halfwidth 4): translation moves only the
// negligible-amplitude part.  superexponential picks a_eps = e^{-w^{3/2}};
// otherwise a_eps = e^{-5 w}, visible to the sampled beurling indices but
// negligible in the roumieu ring.
Net translation_exemplar(const Weight& w, bool superexponential,
                         GridSpec g = {}, EpsSchedule sched = {4, 15});

// Windowed sine, constant in eps: translation invariance fails at a quarter
// period.
Net sine_net(GridSpec g = {}, EpsSchedule sched = {4, 15});

}
