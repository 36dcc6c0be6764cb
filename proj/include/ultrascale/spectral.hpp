#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "ultrascale/config.hpp"
#include "ultrascale/weights.hpp"

namespace ultrascale {

// Complex samples on the uniform grid of `grid`, exactly zero outside the
// declared support interval.
struct GridFunction {
  GridSpec grid;
  std::vector<std::complex<double>> samples;
  double support_lo = 0, support_hi = 0;
  std::string label;

  bool valid() const {
    return samples.size() == static_cast<std::size_t>(grid.n());
  }
};

// Generator form of a function: evaluable anywhere, supported on [a, b].
// Keeping the generator lets stability studies resample on finer grids.
struct SampledFunction {
  std::function<std::complex<double>(double)> eval;
  double a = 0, b = 0;
  std::string label;
};

// Samples eval on the grid with exact zeros outside [a, b].
GridFunction sample_on_grid(const SampledFunction& f, const GridSpec& g);

// Transform values f^(xi_m) = integral f(x) e^{-i x xi} dx approximated by the
// scaled DFT, at xi_m = m pi / L for m = -n/2 .. n/2-1, ascending.
std::vector<std::complex<double>> forward_transform(const GridFunction& f);

// Inverse of forward_transform: spec holds transform values on the ascending
// frequency grid of g.
GridFunction inverse_transform(const std::vector<std::complex<double>>& spec,
                               const GridSpec& g, std::string label);

struct SpectralProfile {
  GridSpec grid;
  std::vector<double> xi;   // ascending frequency grid
  std::vector<double> mag;  // |f^(xi_m)|; entries under the noise floor are 0
  double xi_max = 0;
  double parseval_gap = 0;  // relative gap between the two energy sums
  double noise_floor = 0;   // 1e-13 of the peak magnitude
  std::string convention = "fhat(xi) = integral f(x) exp(-i x xi) dx";
};

// Magnitude profile plus the Parseval certificate.  Samples of relative size
// above 1e-12 at the window edge mean the window clips the function, so the
// transform would alias: that raises WindowError.
SpectralProfile spectrum(const GridFunction& f);

enum class SeminormVariant { L1, Linf, L2 };  // CLI letters a, b, c

struct SeminormSpec {
  Weight w;
  double l = 0;
  SeminormVariant variant = SeminormVariant::L1;
  // restriction interval; samples outside are zeroed before transforming
  double k_lo = -1e300, k_hi = 1e300;
};

// Weighted Fourier seminorm on the function's own grid: integral or sup of
// |f^| e^{l w(|xi|)} (the L2 variant squares the factor).  Throws ConfigError
// when e^{l w(xi_max)} cannot be represented; the message names the largest
// usable index for this grid.
double seminorm(const GridFunction& f, const SeminormSpec& s);

// Largest l with l * w(xi_max) inside double range.
double max_index_for(const Weight& w, const GridSpec& g);

// Measured and certified constants for the chain between the three variants
// at indices l and 2l.  The certified factors are the integrals of e^{-l w}
// and sqrt of e^{-2 l w}; the chains must hold on every input.
struct EquivalenceReport {
  double l = 0;
  double n_l1 = 0;                  // integral variant at l
  double n_sup_l = 0, n_sup_2l = 0; // sup variant at l and 2l
  double n_l2_l = 0, n_l2_2l = 0;   // quadratic variant at l and 2l
  double c2_certified = 0;
  double c4_certified = 0;
  bool chain_l1_sup = false;  // n_l1 <= c2 * n_sup_2l
  bool chain_l1_l2 = false;   // n_l1 <= c4 * n_l2_2l
  double c1_measured = 0;     // n_l1 / n_sup_l
  double c3_measured = 0;     // n_l1 / n_l2_l
  bool defined = true;        // false for the zero function (0/0 ratios)
};
EquivalenceReport norm_equivalence_report(const GridFunction& f,
                                          const Weight& w, double l);

enum class BumpKind { Gevrey, Polynomial, Triangle };

// Catalog test functions on [center - halfwidth, center + halfwidth]:
// Gevrey: exp(-1/(1-u^2)); Polynomial: (1-u^2); Triangle: (1-|u|).
SampledFunction make_bump(BumpKind kind, double center = 0,
                          double halfwidth = 1);

// Gevrey-class transition: 1 for s <= 0, 0 for s >= 1, smooth with
// exp(-1/s)-type flatness at both ends.  Shared by the plateau windows here
// and the mollifier symbol.
double gevrey_smoothstep(double s);

// Plateau window: exactly 1 on [-inner, inner], 0 beyond outer, joined by the
// gevrey-type smoothstep shared with the mollifier transition.
SampledFunction make_window(double inner, double outer);

// Envelope fit of log|f^| against -c xi^(1/s) over the top two frequency
// decades; s searched on a fixed grid.  Zeroed (sub-noise) entries are
// excluded; per-bin maxima tame oscillatory transforms.
struct DecayFit {
  double s = 0;
  double c = 0;
  double amplitude = 0;  // fitted intercept
  double rms = 0;
  int points = 0;
  bool usable = false;
  // log-log slopes of the two halves of the fit range; polynomial decay means
  // they agree, superpolynomial decay steepens
  double loglog_early = 0, loglog_late = 0;
  bool polynomial = false;
  bool empty_tail = false;  // everything above xi_max/100 is below noise
};
DecayFit fit_decay(const SpectralProfile& p);

// Value on the base grid and on two refinements (same window, doubled N).
// divergent: grows by >10% at each refinement.  stable: changes under 1% at
// each refinement.
struct StabilityStudy {
  double value = 0, refined1 = 0, refined2 = 0;
  bool finite = false;
  bool stable = false;
  bool divergent = false;
};
StabilityStudy seminorm_stability(const SampledFunction& f, const GridSpec& g,
                                  const SeminormSpec& s);

enum class MembershipCase { Beurling, Roumieu, RoumieuProjective };

struct MembershipCell {
  double l = 0;
  std::string weight_label;
  StabilityStudy study;
  // Truncation guard: true when log|f^| + l w still climbs across the top
  // decade of above-noise-floor data, so the plateaued grid value is a
  // truncation artifact and the cell counts as divergent.
  bool envelope_divergent = false;
};

// Test-function class membership at grid scale.  Beurling demands a stable
// finite seminorm at every probed index; Roumieu at some probed index;
// RoumieuProjective at index 1 for three constructed strictly weaker weights.
// A polynomial Fourier-decay shape refutes membership for any weight (axiom
// (c) forces superpolynomial decay), whatever the finite-range values say.
struct MembershipVerdict {
  int verdict = 0;  // +1 member, -1 non-member, 0 inconclusive
  std::vector<MembershipCell> cells;
  DecayFit decay;
  std::string note;
};
MembershipVerdict test_membership(const SampledFunction& f, const GridSpec& g,
                                  const Weight& w, MembershipCase c);

// Derivative by frequency multiplication with i xi; exact for grid-resolved
// content under the fixed convention.
GridFunction spectral_derivative(const GridFunction& f);

// f(. - shift) by frequency phase; the shifted support must stay inside the
// window or WindowError is raised.
GridFunction translate(const GridFunction& f, double shift);

}
