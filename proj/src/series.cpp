#include "loewner/series.hpp"

#include <cmath>
#include <stdexcept>

namespace loewner {

cpx poly_eval(const std::vector<cpx>& a, cpx z)
{
    cpx s = 0.0;
    for (std::size_t i = a.size(); i-- > 0;) s = s * z + a[i];
    return s;
}

std::vector<cpx> poly_derivative(const std::vector<cpx>& a)
{
    if (a.size() <= 1) return {};
    std::vector<cpx> d(a.size() - 1);
    for (std::size_t k = 1; k < a.size(); ++k) d[k - 1] = double(k) * a[k];
    return d;
}

std::vector<cpx> series_log(const std::vector<cpx>& a)
{
    if (a.empty() || a[0] == cpx(0.0)) throw std::invalid_argument("series_log: a_0 = 0");
    std::vector<cpx> L(a.size());
    L[0] = std::log(a[0]);
    for (std::size_t m = 1; m < a.size(); ++m) {
        cpx s = double(m) * a[m];
        for (std::size_t j = 1; j < m; ++j) s -= double(j) * L[j] * a[m - j];
        L[m] = s / (double(m) * a[0]);
    }
    return L;
}

std::vector<cpx> series_exp(const std::vector<cpx>& a)
{
    if (a.empty()) return {};
    std::vector<cpx> E(a.size());
    E[0] = std::exp(a[0]);
    for (std::size_t m = 1; m < a.size(); ++m) {
        cpx s = 0.0;
        for (std::size_t j = 1; j <= m; ++j) s += double(j) * a[j] * E[m - j];
        E[m] = s / double(m);
    }
    return E;
}

std::vector<cpx> series_mul(const std::vector<cpx>& a, const std::vector<cpx>& b,
                            std::size_t nout)
{
    std::vector<cpx> c(nout, cpx(0.0));
    for (std::size_t i = 0; i < a.size() && i < nout; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < nout; ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

cpx LaurentSeries::eval(cpx z) const
{
    cpx s = poly_eval(pos, z);
    const cpx v = rho / z;
    cpx p = 1.0;
    for (std::size_t m = 0; m < neg.size(); ++m) {
        p *= v;
        s += neg[m] * p;
    }
    return s;
}

cpx LaurentSeries::deriv(cpx z) const
{
    cpx s = poly_eval(poly_derivative(pos), z);
    // d/dz (z/rho)^{-m} = (-m/z) (z/rho)^{-m}
    const cpx v = rho / z;
    cpx p = 1.0;
    for (std::size_t m = 0; m < neg.size(); ++m) {
        p *= v;
        s += neg[m] * (-(double(m) + 1.0) / z) * p;
    }
    return s;
}

cpx LaurentSeries::deriv2(cpx z) const
{
    cpx s = poly_eval(poly_derivative(poly_derivative(pos)), z);
    const cpx v = rho / z;
    cpx p = 1.0;
    for (std::size_t m = 0; m < neg.size(); ++m) {
        p *= v;
        const double mm = double(m) + 1.0;
        s += neg[m] * (mm * (mm + 1.0) / (z * z)) * p;
    }
    return s;
}

}
