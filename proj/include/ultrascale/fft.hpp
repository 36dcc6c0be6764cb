#pragma once

#include <complex>
#include <vector>

namespace ultrascale {

// In-place radix-2 transform; size must be a power of two.
// forward: X_k = sum_j x_j e^{-2 pi i j k / n}; inverse flips the sign and
// divides by n.  Twiddle tables are built per call, so the function is pure
// and safe under any threading.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

}
