#pragma once

namespace loewner {

// Euler product phi(x) = prod_{k>=1} (1 - x^k) for 0 <= x < 1.
// Truncated once x^k drops below 1e-18; the remaining tail is below the
// double-precision resolution of the result.
double euler_phi(double x);

// log phi(x). For x > 0.98 the raw product loses precision, so the value
// is routed through the modular transformation of the Dedekind eta
// function (nome e^{-2 pi t} mapped to e^{-2 pi / t}).
double log_euler_phi(double x);

// Derivative zeta'(-1) of the Riemann zeta function, accurate to at least
// 12 significant digits. Computed once on first use from the
// Glaisher-Kinkelin relation zeta'(-1) = 1/12 - log A, with log A summed
// from the hyperfactorial asymptotics; not a stored literature value.
double zeta_prime_minus_one();

struct CharacterParams {
    double c;  // central charge
    double h;  // highest weight
    double q;  // nome in (0,1), q = e^{-pi/tau}
};

// log chi_{c,h}(q) = (h - c/24) log q - log phi(q), the logarithm of a
// single Verma-module character.
double virasoro_character(const CharacterParams& p);

}
