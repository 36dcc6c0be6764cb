#pragma once

#include <vector>

#include "ultrascale/spectral.hpp"
#include "ultrascale/weights.hpp"

namespace ultrascale {

// Grid the convolution kernel lives on.  Much wider than the default window:
// a band-limited kernel cannot decay exponentially, and the higher moment
// integrals only settle once the oscillatory tail has been carried far out.
GridSpec mollifier_grid();

// The kernel's frequency symbol: exactly 1 on |xi| <= 1, gevrey smoothstep
// down to exact 0 on [1, 2].  Free function so nets can be synthesized in
// frequency without building the full kernel object.
double mollifier_symbol(double xi);

// Convolution kernel built in frequency: symbol exactly 1 on |xi| <= 1,
// gevrey smoothstep down to exact 0 on [1, 2], profile recovered by inverse
// transform.  mass = symbol(0) = 1 up to transform roundoff.  The moment
// sums h sum x^k phi shrink with k-dependent floors: truncation and x^k
// amplified roundoff keep the high ones well above the low ones.  Samples
// below 1e-13 of the peak are snapped to exact zero, same policy as the
// spectrum noise floor.
struct Mollifier {
  GridFunction phi;             // real profile; imaginary parts zeroed
  std::vector<double> prefix;   // integral from the left edge to each node
  std::vector<double> moments;  // h sum x^k phi for k = 1..8
  double sigma = 1;             // transition sharpness of the symbol
  double mass = 0;
  Weight w;  // weight the kernel was requested for (recorded; the fixed
             // gevrey transition outgrows every catalog weight)

  double hat(double xi) const;    // closed-form symbol
  double phi_at(double x) const;  // cubic interpolation, exact 0 beyond grid
  double integral_to(double x) const;  // 0 below the grid, mass above it
  double scaled(double x, double eps) const;  // phi(x/eps)/eps
};

// Builds the kernel for w on grid g.  Throws WindowError when the tail mass
// outside the inner half of the window exceeds 1e-10.
Mollifier make_mollifier_kernel(const Weight& w,
                                const GridSpec& g = mollifier_grid());

// The kernel profile alone, on the default mollifier grid.
GridFunction make_mollifier(const Weight& w);

}
