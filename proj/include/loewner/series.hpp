#pragma once
#include <complex>
#include <vector>

#include "loewner/fft.hpp"

namespace loewner {

// Power series a_0 + a_1 z + ... evaluated by Horner's rule.
cpx poly_eval(const std::vector<cpx>& a, cpx z);

// Coefficients of the derivative.
std::vector<cpx> poly_derivative(const std::vector<cpx>& a);

// log(f) as a power series given f = a_0 + a_1 z + ..., a_0 != 0.
// Returns L with L_0 = log a_0 (principal branch) and the standard
// recurrence m a_0 L_m = m a_m - sum_{j<m} j L_j a_{m-j}.
std::vector<cpx> series_log(const std::vector<cpx>& a);

// exp(f) as a power series; E_0 = exp(a_0), m E_m = sum_{j<=m} j a_j E_{m-j}.
std::vector<cpx> series_exp(const std::vector<cpx>& a);

// Cauchy product truncated to the shorter operand's natural degree window.
std::vector<cpx> series_mul(const std::vector<cpx>& a, const std::vector<cpx>& b,
                            std::size_t nout);

// Finite Laurent series on an annulus rho < |z| < 1.
//
// Storage convention: pos[k] multiplies z^k for k >= 0; neg[m-1]
// multiplies (z/rho)^{-m} for m >= 1. The negative part is kept in this
// normalized form because the raw coefficients of z^{-m} scale like
// rho^{-m} and overflow doubles long before m reaches typical truncation
// orders.
struct LaurentSeries {
    std::vector<cpx> pos;
    std::vector<cpx> neg;
    double rho = 0.0;

    cpx eval(cpx z) const;
    cpx deriv(cpx z) const;
    cpx deriv2(cpx z) const;
};

}
