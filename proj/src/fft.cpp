#include "loewner/fft.hpp"

#include <fftw3.h>

#include <stdexcept>

namespace loewner {

void fft(std::vector<cpx>& a, int sign)
{
    if (a.empty()) return;
    const int n = static_cast<int>(a.size());
    // FFTW_ESTIMATE keeps planning deterministic and does not touch the
    // input array during planning.
    fftw_plan plan = fftw_plan_dft_1d(
        n,
        reinterpret_cast<fftw_complex*>(a.data()),
        reinterpret_cast<fftw_complex*>(a.data()),
        sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
        FFTW_ESTIMATE);
    if (!plan) throw std::runtime_error("fftw plan failed");
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

std::vector<cpx> fourier_coeffs(std::vector<cpx> samples)
{
    const double n = static_cast<double>(samples.size());
    fft(samples, -1);
    for (auto& c : samples) c /= n;
    return samples;
}

std::vector<cpx> fourier_samples(std::vector<cpx> coeffs)
{
    fft(coeffs, +1);
    return coeffs;
}

std::vector<double> conjugate_periodic(const std::vector<double>& u)
{
    const int n = static_cast<int>(u.size());
    std::vector<cpx> c(u.begin(), u.end());
    fft(c, -1);
    const cpx mi(0.0, -1.0);
    for (int j = 1; j < (n + 1) / 2; ++j) {
        c[j] *= mi;
        c[n - j] *= -mi;
    }
    c[0] = 0.0;
    if (n % 2 == 0) c[n / 2] = 0.0;
    fft(c, +1);
    std::vector<double> v(n);
    for (int j = 0; j < n; ++j) v[j] = c[j].real() / n;
    return v;
}

}
