#include "ultrascale/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace ultrascale::kernels {

namespace {

constexpr std::size_t kBlock = 4096;
// Small inputs stay serial; the blocked partition is identical either way.
constexpr std::size_t kParallelCutoff = 1u << 15;

int resolve_threads() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("ULTRASCALE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) n = static_cast<int>(std::min<long>(v, 256));
  }
  return n < 1 ? 1 : n;
}

}

int thread_count() {
  static const int n = resolve_threads();
  return n;
}

double sum_serial(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x;
  return s;
}

double dot_serial(std::span<const double> a, std::span<const double> b) {
  std::size_t n = std::min(a.size(), b.size());
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_blocked(std::span<const double> v) {
  std::size_t n = v.size();
  std::size_t nb = (n + kBlock - 1) / kBlock;
  if (nb == 0) return 0;
  std::vector<double> partial(nb, 0.0);
  bool par = n >= kParallelCutoff && thread_count() > 1;
#pragma omp parallel for schedule(static) num_threads(thread_count()) if (par)
  for (long b = 0; b < static_cast<long>(nb); ++b) {
    std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    std::size_t hi = std::min(lo + kBlock, n);
    double s = 0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    partial[static_cast<std::size_t>(b)] = s;
  }
  // Combine in block order regardless of how blocks were scheduled.
  double s = 0;
  for (double p : partial) s += p;
  return s;
}

double dot_blocked(std::span<const double> a, std::span<const double> b) {
  std::size_t n = std::min(a.size(), b.size());
  std::size_t nb = (n + kBlock - 1) / kBlock;
  if (nb == 0) return 0;
  std::vector<double> partial(nb, 0.0);
  bool par = n >= kParallelCutoff && thread_count() > 1;
#pragma omp parallel for schedule(static) num_threads(thread_count()) if (par)
  for (long blk = 0; blk < static_cast<long>(nb); ++blk) {
    std::size_t lo = static_cast<std::size_t>(blk) * kBlock;
    std::size_t hi = std::min(lo + kBlock, n);
    double s = 0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
    partial[static_cast<std::size_t>(blk)] = s;
  }
  double s = 0;
  for (double p : partial) s += p;
  return s;
}

double max_abs(std::span<const double> v) {
  double m = 0;
  std::size_t n = v.size();
  bool par = n >= kParallelCutoff && thread_count() > 1;
#pragma omp parallel for schedule(static) num_threads(thread_count()) \
    reduction(max : m) if (par)
  for (long i = 0; i < static_cast<long>(n); ++i) {
    double a = std::fabs(v[static_cast<std::size_t>(i)]);
    if (a > m) m = a;
  }
  return m;
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body) {
  bool par = n >= 2 && thread_count() > 1;
#pragma omp parallel for schedule(static) num_threads(thread_count()) if (par)
  for (long i = 0; i < static_cast<long>(n); ++i)
    body(static_cast<std::size_t>(i));
}

std::size_t first_violation(std::size_t n,
                            const std::function<bool(std::size_t)>& ok) {
  std::size_t best = npos;
  bool par = n >= 64 && thread_count() > 1;
#pragma omp parallel num_threads(thread_count()) if (par)
  {
    std::size_t local = npos;
#pragma omp for schedule(static)
    for (long i = 0; i < static_cast<long>(n); ++i) {
      std::size_t u = static_cast<std::size_t>(i);
      if (u < local && !ok(u)) local = u;
    }
#pragma omp critical
    if (local < best) best = local;
  }
  return best;
}

}
