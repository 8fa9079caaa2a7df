#pragma once
// Trigonometric spectral engine on the periodic grid: forward/backward
// transforms in the spectral-coefficient normalization, differentiation with
// the Nyquist mode of odd derivatives zeroed, low-pass filtering, and the
// 3/2-rule padding pair used to de-alias quadratic products.
#include <complex>
#include <vector>

#include "sympcy/grid.hpp"

namespace sympcy {

// Spectral coefficients: chat(k) = (1/npts) sum_x f(x) e^{-i k.x}; layout
// matches the grid (frequency i maps to k = i for i <= n/2, else i - n).
std::vector<std::complex<double>> fft_coeffs(const Grid& g, const double* v);
void ifft_values(const Grid& g, const std::vector<std::complex<double>>& coeffs, double* out);

// d/dx_axis via multiplication by i*k; Nyquist mode zeroed (odd derivative).
void spectral_derivative(const Grid& g, const double* v, int axis, double* out);

// Zeroes all modes with any |k_a| > kmax.
void lowpass(const Grid& g, double* v, int kmax);

// 3/2-rule padded companion grid (active axes only).
Grid padded_grid(const Grid& g);

// Exact trigonometric resampling between a grid and its padded companion.
void pad_to(const Grid& gin, const double* v, const Grid& gout, double* out);
void truncate_to(const Grid& gin, const double* v, const Grid& gout, double* out);

}  // namespace sympcy
