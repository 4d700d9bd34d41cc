#pragma once
#include <vector>

#include "loewner/loops.hpp"
#include "loewner/uniformize.hpp"

namespace loewner {

// Additive decomposition of the two-loop potential along the
// pre-Schwarzian route:
//   total = circle_term + (I1 + IA + I2)/(12 pi) - log_ratio_term/3.
// circle_term is the concentric-circle value at the same modulus, the
// I's are the squared pre-Schwarzian integrals over the three domains,
// log_ratio_term = log|f2'(inf)| - log|f1'(0)|.
struct PotentialBreakdown {
    double circle_term = 0.0;
    double I1 = 0.0, IA = 0.0, I2 = 0.0;
    double log_ratio_term = 0.0;
    double total = 0.0;
};

// Weighted coefficient sums entering the multiple Grunsky identity.
// Storage is against the scaled variables that keep every entry O(1):
// b_minus[k-1] holds the u^k coefficient of log(C(u)/u) - log C'(0) with
// u = z/rho (the raw z-coefficient would carry a factor e^{2 pi k tau});
// beta_neg[m-1] holds the inner-circle Fourier coefficient (the raw
// z^{-m} coefficient times rho^m). beta_pos and b_plus are unscaled. The
// weighted sums lhs, rhs are exactly the unscaled identity's values.
struct GrunskyData {
    std::vector<cpx> b_minus;   // from f1
    std::vector<cpx> beta_pos;  // from fA, frequencies +1..N
    std::vector<cpx> beta_neg;  // from fA, frequencies -1..-N (scaled)
    std::vector<cpx> b_plus;    // from f2
    double lhs = 0.0;
    double rhs = 0.0;  // 2 pi (log|f2'(inf)| - log|f1'(0)|)
    double gap = 0.0;  // rhs - lhs, >= 0 up to roundoff
};

// Concentric-pair potential -log(tau) - 2 log phi(e^{-4 pi tau}); the
// additive constant is fixed to 0, so only differences are meaningful.
double lpot_circles(double tau);

// Interaction relative to modulus 1: lpot_circles(tau) - lpot_circles(1).
double blm_interaction_circles(double tau);

// Integral of |f''/f'|^2 over the map's own domain (area measure).
// Interior and exterior maps reduce to a coefficient sum integrated
// radially by Gauss-Legendre; the annulus map is integrated pointwise on
// a Gauss-Legendre x uniform polar grid.
double preschwarzian_energy(const ConformalMapSeries& f);

PotentialBreakdown lpot_two(const TwoLoopConfig& cfg);

// (1/16 pi) times the Dirichlet energy of the winding function
// arg(z f'(z)/f(z)) taken piecewise over the three domains with the
// continuous branch vanishing at infinity; branch consistency across the
// two interfaces is verified and a mismatch throws convergence_error.
double winding_energy(const Uniformization& u);

// lpot_circles(tau) + (4/3) winding_energy - log_ratio_term/6. Equals
// lpot_two(cfg).total up to a configuration-independent constant
// (measured to be 0 in this normalization).
double lpot_two_via_lk(const TwoLoopConfig& cfg);

// Grunsky sums truncated at N; requires N within the series resolution
// of u.
GrunskyData grunsky(const Uniformization& u, int N);

}
