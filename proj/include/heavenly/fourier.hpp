#pragma once

#include <complex>

namespace heavenly::fft {

// r2c transform, unnormalized: out[k] = sum_j in[j] exp(-2 pi i j k / n), k = 0..n/2.
// out must hold n/2+1 entries.
void forward(const double* in, std::complex<double>* out, int n);

// c2r inverse with the 1/n normalization applied, so backward(forward(f)) == f.
void backward(const std::complex<double>* in, double* out, int n);

}  // namespace heavenly::fft
