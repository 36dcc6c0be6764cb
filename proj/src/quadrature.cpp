#include "ultrascale/quadrature.hpp"
#include <algorithm>

#include <cmath>

namespace ultrascale {

namespace {

constexpr int kMinDepth = 4;  // resolve shape before trusting Richardson

struct Worker {
  const std::function<double(double)>& f;
  double rel_tol;
  int max_depth;
  long evals = 0;
  bool converged = true;
  double abs_err = 0;

  double eval(double x) {
    ++evals;
    return f(x);
  }

  // Classic adaptive Simpson with Richardson correction.  tol is an absolute
  // budget for this panel; it halves with each split.
  double panel(double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = eval(lm);
    double frm = eval(rm);
    double h6 = (b - a) / 12.0;
    double left = h6 * (fa + 4.0 * flm + fm);
    double right = h6 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth >= max_depth) {
      converged = false;
      abs_err += std::fabs(delta);
      return left + right + delta / 15.0;
    }
    if (depth >= kMinDepth && std::fabs(delta) <= 15.0 * tol) {
      abs_err += std::fabs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return panel(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           panel(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, int max_depth) {
  QuadResult r;
  if (a == b) return r;
  Worker w{f, rel_tol, max_depth};
  double fa = w.eval(a);
  double m = 0.5 * (a + b);
  double fm = w.eval(m);
  double fb = w.eval(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  // Floor the tolerance by a sampled magnitude scale rather than the
  // (possibly cancelling) signed estimate, so oscillatory and identically
  // zero integrands both terminate.  17 points so a few zeros of the
  // integrand cannot fake an empty integral.
  double mag = std::fabs(fa) + std::fabs(fm) + std::fabs(fb);
  for (int i = 1; i < 15; ++i)
    mag += std::fabs(w.eval(a + (b - a) * i / 15.0));
  double scale = std::fabs(b - a) * mag / 17.0;
  double tol = rel_tol * std::max(std::fabs(whole), 1e-3 * scale);
  if (tol < 1e-280) tol = 1e-280;
  // The coarse estimate can exceed the true integral by orders of magnitude
  // on decaying integrands, which would leave tol far too slack.  Re-run
  // with the refined magnitude until the two agree.
  for (int pass = 0; pass < 4; ++pass) {
    w.abs_err = 0;
    w.converged = true;
    r.value = w.panel(a, b, fa, fm, fb, whole, tol, 0);
    double refined =
        rel_tol * std::max(std::fabs(r.value), 1e-3 * scale);
    if (refined < 1e-280) refined = 1e-280;
    if (tol <= 2.0 * refined) break;
    tol = refined;
  }
  r.abs_err = w.abs_err;
  r.converged = w.converged;
  r.evals = w.evals;
  return r;
}

}
