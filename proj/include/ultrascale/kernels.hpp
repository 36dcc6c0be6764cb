#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace ultrascale::kernels {

// Thread count honored by every parallel kernel.  Resolved once from
// ULTRASCALE_THREADS (0 or unset means the OpenMP default).
int thread_count();

// Left-to-right accumulation.  Reference implementation for the blocked
// kernels; kept serial on purpose.
double sum_serial(std::span<const double> v);
double dot_serial(std::span<const double> a, std::span<const double> b);

// Fixed 4096-element blocks, each summed serially, block results combined
// in index order.  Bit-identical for any thread count, including one.
double sum_blocked(std::span<const double> v);
double dot_blocked(std::span<const double> a, std::span<const double> b);

// Order-independent reductions.
double max_abs(std::span<const double> v);

// Parallel loop over [0, n) with static schedule; body must only touch
// index-owned state.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body);

// Smallest index where ok() fails, or npos.  Parallel scan with a
// deterministic first-witness reduction.
inline constexpr std::size_t npos = static_cast<std::size_t>(-1);
std::size_t first_violation(std::size_t n,
                            const std::function<bool(std::size_t)>& ok);

}
