#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ultrascale/config.hpp"

namespace ultrascale {

// Sampling plan for every audit, certificate, and ordering verdict.
struct AuditConfig {
  double t_cap = 1e9;            // certified range [0, t_cap]
  int pairs_per_decade = 512;    // quasi-random subadditivity pairs
  std::uint64_t pair_seed = 77003917u;  // recorded in reports
  double tol_scale = 1e-9;       // additive tolerance scale for comparisons
};

struct Breakpoint {
  double t = 0;
  std::string piece;
};

// A candidate weight function: nonnegative, vanishing at zero, evaluable on
// [0, t_cap].  Whether it satisfies the weight axioms is decided by
// check_axioms, not by construction.
struct Weight {
  std::string label;
  std::string kind;
  double t_cap = 1e9;
  std::vector<double> params;
  std::vector<Breakpoint> breakpoints;
  std::function<double(double)> fn;

  double operator()(double t) const;
  bool valid() const { return static_cast<bool>(fn); }
};

// Quarter-octave grid 2^(j/4), j = 0 .. floor(4 log2 t_cap).
std::vector<double> audit_grid(double t_cap);

struct AuditPair {
  double x = 0, y = 0;
};

// pairs_per_decade low-discrepancy points per decade of [1, t_cap], fixed by
// pair_seed.  Pairs with x + y beyond t_cap are dropped: they leave the
// certified range.
std::vector<AuditPair> audit_pairs(const AuditConfig& cfg);

// Factories.  make_candidate accepts anything evaluable and leaves judgment
// to check_axioms; make_weight additionally rejects shapes that are known to
// break an axiom structurally, so downstream constructions can rely on it.
// Spec strings: power(a) with a a decimal or fraction p/q, log, log2, linear.
Weight make_candidate(const std::string& spec, double t_cap = 1e9);
Weight make_weight(const std::string& spec, double t_cap = 1e9);
Weight make_power(double a, double t_cap = 1e9);
Weight make_table(std::vector<std::pair<double, double>> pts, std::string label);

// Pointwise helpers used for witnesses; subadditivity and monotonicity are
// preserved, axiom (c) follows from the ingredients.
Weight scale_weight(double c, const Weight& w);
Weight sum_weights(const Weight& a, const Weight& b);

// Convergence certificate for the tail integral of w(t)/t^2: dyadic block
// values, geometric decay of the last blocks, and the extrapolated total.
struct IntegralCertificate {
  std::vector<double> blocks;     // I_j over [2^j, 2^(j+1)]
  double partial = 0;             // sum of blocks
  double tail_ratio = 0;          // worst ratio over the last 8 blocks
  double tail_estimate = 0;       // geometric extrapolation beyond t_cap
  double total = 0;
  bool decaying = false;
  bool quadrature_ok = true;
};

// Threshold certificate for w / log(1+t) -> infinity at one level M.
struct SuperLogCertificate {
  double M = 0;
  bool threshold_found = false;
  double t_M = 0;                  // ratio stays above M from here on
  bool trend_certified = false;    // unreachable M, but ratio still climbing
  bool pass = false;
  double final_ratio = 0;
  std::string note;
};

struct AxiomReport {
  bool representation_ok = true;   // every sample finite and nonnegative
  bool zero_at_zero = false;
  bool monotone = false;
  bool subadditive = false;
  bool integral_finite = false;
  bool superlog = false;
  std::optional<double> monotone_witness;
  std::optional<AuditPair> subadd_witness;
  double subadd_lhs = 0, subadd_rhs = 0;   // w(x+y) vs w(x)+w(y) at witness
  IntegralCertificate integral;
  std::vector<SuperLogCertificate> superlog_checks;
  double t_cap = 0;
  std::uint64_t pair_seed = 0;
  std::string note;

  bool pass() const {
    return representation_ok && zero_at_zero && monotone && subadditive &&
           integral_finite && superlog;
  }
};

AxiomReport check_axioms(const Weight& w, const AuditConfig& cfg = {});

enum class Relation { WeakEquivalent, StronglyLess, Incomparable, Inconclusive };
enum class CompareMode { WeakEquiv, StrongLess };

struct OrderVerdict {
  Relation relation = Relation::Inconclusive;
  int direction = +1;        // StronglyLess: +1 means first strictly below second
  double k = 0, m = 0;       // WeakEquivalent: k w1 <= w2 <= m w1 on the grid
  std::vector<double> ts;    // ratio trace w1/w2
  std::vector<double> ratios;
  std::string diagnostic;

  bool strongly_less() const {
    return relation == Relation::StronglyLess && direction > 0;
  }
  bool weak_equivalent() const { return relation == Relation::WeakEquivalent; }
};

// Finite-sample ordering verdict from the ratio trace on the audit grid.
// The tail ratio test demands decrease, a net drop, and a small final value,
// so a bounded ratio is never misread as strict domination.
OrderVerdict compare(const Weight& w1, const Weight& w2,
                     CompareMode mode = CompareMode::StrongLess,
                     const AuditConfig& cfg = {},
                     const DecisionConfig& dc = {});

}
