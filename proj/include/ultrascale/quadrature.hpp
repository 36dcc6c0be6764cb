#pragma once

#include <functional>

namespace ultrascale {

struct QuadResult {
  double value = 0;
  double abs_err = 0;  // final accepted error estimate, summed over panels
  bool converged = true;
  long evals = 0;
};

// Adaptive Simpson on [a, b].  Tolerance is relative to the accumulated
// integral magnitude with an absolute floor, so integrands that are tiny
// everywhere terminate.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-8, int max_depth = 48);

}
