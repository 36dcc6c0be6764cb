#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace ultrascale {

// Knobs for the finite-sample decision rules.  Every verdict the library
// emits is relative to these; reports echo them so runs are reproducible.
struct DecisionConfig {
  double delta = 0.05;       // decision margin on fitted slopes
  int window = 12;           // trailing points used by slope fits
  double kmax = 64.0;        // truncation of unbounded "for all k" quantifiers
  int o_window = 8;          // trailing points used by ratio vanishing tests
  double o_final = 0.05;     // ratio counted as vanishing below this
  double o_min_drop = 0.02;  // required net relative decrease across the window
  int roumieu_depth = 4;     // constructed strictly-weaker weights per family
  int forall_lo = -6;        // dyadic exponent range sampled for universal quantifiers
  int forall_hi = 6;
  int exists_lo = -8;        // witness searches extend two octaves past each end
  int exists_hi = 8;
  double vanish_tol = 0.002;   // fitted slope treated as zero
  double vanish_shrink = 0.6;  // late/early ratio certifying slope decay
  double vanish_cap = 0.05;    // largest late slope the shrink branch accepts
  double diverge_grow = 1.25;  // late/early ratio certifying slope growth

  // Margin for the claim "slope <= target": shrinks near zero so small
  // targets are not granted for free.
  static double margin(double target, double delta) {
    double m = std::fabs(target) / 4.0;
    return m < delta ? m : delta;
  }
  double margin(double target) const { return margin(target, delta); }
};

// Powers of two 2^lo .. 2^hi inclusive.
std::vector<double> dyadic_grid(int lo, int hi);

// Epsilon schedule eps_k = 2^-k for integer k in [kmin, kmax].
struct EpsSchedule {
  int kmin = 4;
  int kmax = 40;
  std::vector<int> ks() const;
  static double eps(int k) { return std::exp2(-static_cast<double>(k)); }
};

// Uniform grid of n = 2^log2n samples on [-L, L), x_j = -L + j h.
struct GridSpec {
  double L = 16.0;
  int log2n = 15;
  int n() const { return 1 << log2n; }
  double h() const { return 2.0 * L / static_cast<double>(n()); }
  double x(int j) const { return -L + h() * static_cast<double>(j); }
  double xi_spacing() const { return M_PI / L; }
  // Largest frequency carried by the grid, pi/h.
  double xi_max() const { return M_PI / h(); }
  bool operator==(const GridSpec&) const = default;
};

}
