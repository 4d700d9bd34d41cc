#pragma once
#include <complex>
#include <vector>

namespace loewner {

using cpx = std::complex<double>;

// In-place complex DFT. sign = -1: forward, X_k = sum_j a_j e^{-2pi i jk/n};
// sign = +1: unscaled inverse. Length need not be a power of two.
void fft(std::vector<cpx>& a, int sign);

// Fourier coefficients of n periodic samples, scaled by 1/n.
// Result index j holds the coefficient of frequency j for j < n/2 and
// frequency j - n otherwise (usual wraparound layout).
std::vector<cpx> fourier_coeffs(std::vector<cpx> samples);

// Inverse of fourier_coeffs: samples at theta_j = 2 pi j / n.
std::vector<cpx> fourier_samples(std::vector<cpx> coeffs);

// Periodic Hilbert conjugate of real samples: coefficient at frequency k
// is multiplied by -i sgn(k), the Nyquist bin is dropped. The conjugate of
// log|f| boundary data gives arg f for functions analytic and nonvanishing
// in the disk.
std::vector<double> conjugate_periodic(const std::vector<double>& u);

}
