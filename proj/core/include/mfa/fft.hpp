#pragma once

#include <complex>
#include <span>
#include <vector>

namespace mfa {

// Unnormalized in-place forward DFT: iterative radix-2 for power-of-two
// sizes, naive O(n^2) evaluation otherwise (frames are small).
void fft_forward(std::vector<std::complex<double>>& x);

// Real-input forward transform; returns the one-sided spectrum of
// floor(n/2) + 1 bins.
std::vector<std::complex<double>> rfft(std::span<const double> x);

}  // namespace mfa
