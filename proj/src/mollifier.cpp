#include "ultrascale/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "ultrascale/errors.hpp"
#include "ultrascale/kernels.hpp"

namespace ultrascale {

GridSpec mollifier_grid() {
  // A band-limited profile cannot decay exponentially: the measured tail
  // falls like exp(-1.3 sqrt(x)) and still carries ~1.4e-10 mass beyond
  // x = 256.  L = 1024 is the first power of two whose half window meets
  // the 1e-10 tail budget.  h = 2^-8 keeps cubic interpolation of the
  // profile comfortably below the pairing tolerances.
  GridSpec g;
  g.L = 1024.0;
  g.log2n = 19;
  return g;
}

double mollifier_symbol(double xi) {
  double a = std::fabs(xi);
  if (a <= 1) return 1.0;
  return gevrey_smoothstep(a - 1.0);  // exact 0 once a >= 2
}

double Mollifier::hat(double xi) const { return mollifier_symbol(xi); }

namespace {

// 4-point Lagrange weights at offset t in [0, 1] between the middle nodes.
void cubic_weights(double t, double c[4]) {
  c[0] = -t * (t - 1) * (t - 2) / 6.0;
  c[1] = (t + 1) * (t - 1) * (t - 2) / 2.0;
  c[2] = -(t + 1) * t * (t - 2) / 2.0;
  c[3] = (t + 1) * t * (t - 1) / 6.0;
}

}

double Mollifier::phi_at(double x) const {
  const GridSpec& g = phi.grid;
  if (std::fabs(x) >= g.L) return 0.0;
  double u = (x + g.L) / g.h();
  int j = std::clamp(static_cast<int>(std::floor(u)), 1, g.n() - 3);
  double c[4];
  cubic_weights(u - j, c);
  return c[0] * phi.samples[j - 1].real() + c[1] * phi.samples[j].real() +
         c[2] * phi.samples[j + 1].real() + c[3] * phi.samples[j + 2].real();
}

double Mollifier::integral_to(double x) const {
  const GridSpec& g = phi.grid;
  if (x <= -g.L) return 0.0;
  if (x >= g.L) return mass;
  double u = (x + g.L) / g.h();
  int j = std::clamp(static_cast<int>(std::floor(u)), 1, g.n() - 3);
  double c[4];
  cubic_weights(u - j, c);
  return c[0] * prefix[j - 1] + c[1] * prefix[j] + c[2] * prefix[j + 1] +
         c[3] * prefix[j + 2];
}

double Mollifier::scaled(double x, double eps) const {
  if (eps <= 0) throw std::invalid_argument("scale must be positive");
  return phi_at(x / eps) / eps;
}

Mollifier make_mollifier_kernel(const Weight& w, const GridSpec& g) {
  Mollifier m;
  m.w = w;
  int n = g.n();
  double dxi = g.xi_spacing();
  std::vector<std::complex<double>> sym(n);
  for (int i = 0; i < n; ++i)
    sym[i] = m.hat(static_cast<double>(i - n / 2) * dxi);
  m.phi = inverse_transform(sym, g, "mollifier");
  // the symbol is real and even, so the profile is real; roundoff imaginary
  // parts are dropped to keep downstream pairings exact
  for (auto& z : m.phi.samples) z = z.real();
  double h = g.h();
  std::vector<double> re(n);
  for (int j = 0; j < n; ++j) re[j] = m.phi.samples[j].real();
  // samples below the transform roundoff floor snap to exact zero, the same
  // policy spectrum() applies to magnitudes; otherwise the far tail is pure
  // noise and the x^k moment sums amplify it
  double peak = kernels::max_abs(re);
  for (int j = 0; j < n; ++j)
    if (std::fabs(re[j]) < 1e-13 * peak) {
      re[j] = 0.0;
      m.phi.samples[j] = 0.0;
    }
  m.mass = h * kernels::sum_blocked(re);
  std::vector<double> tail(n, 0.0);
  for (int j = 0; j < n; ++j)
    if (std::fabs(g.x(j)) > g.L / 2) tail[j] = std::fabs(re[j]);
  if (h * kernels::sum_blocked(tail) > 1e-10)
    throw WindowError(
        "mollifier tail mass outside half the window exceeds 1e-10; the grid "
        "is too small for the kernel");
  // prefix integral with a 4-point cell rule, O(h^4); values one step past
  // either edge are treated as 0, costing only the sub-1e-20 edge tails
  auto at = [&](int j) { return (j < 0 || j >= n) ? 0.0 : re[j]; };
  m.prefix.assign(n, 0.0);
  for (int j = 0; j + 1 < n; ++j) {
    double step =
        h * (-at(j - 1) + 13 * at(j) + 13 * at(j + 1) - at(j + 2)) / 24.0;
    m.prefix[j + 1] = m.prefix[j] + step;
  }
  m.moments.assign(8, 0.0);
  std::vector<double> term(n);
  for (int k = 1; k <= 8; ++k) {
    for (int j = 0; j < n; ++j) term[j] = std::pow(g.x(j), k) * re[j];
    m.moments[k - 1] = h * kernels::sum_blocked(term);
  }
  return m;
}

GridFunction make_mollifier(const Weight& w) {
  return make_mollifier_kernel(w).phi;
}

}
