#pragma once
#include <vector>

#include "loewner/loops.hpp"
#include "loewner/uniformize.hpp"

namespace loewner {

// Compactly supported dilatation nu(z) = amplitude (1 - t)^4 with
// t = |z - center|^2 / radius^2 inside the support disk, 0 outside.
struct BeltramiBump {
    cpx center;
    double radius = 0.0;
    cpx amplitude;

    cpx operator()(cpx z) const;
};

// First-order solution of the Beltrami equation with dilatation eps nu:
// z - (eps/pi) * integral of nu(w)/(w - z) over the support, evaluated by
// a fixed polar quadrature. Holomorphic off the support, identity at
// infinity, so loops disjoint from the support stay smooth loops.
class FirstOrderDeformation {
public:
    FirstOrderDeformation(const BeltramiBump& nu, double eps);
    cpx operator()(cpx z) const;
    // image of a loop, refit to trigonometric coefficients; the loop must
    // not meet the support disk
    Loop apply(const Loop& g) const;

private:
    BeltramiBump nu_;
    std::vector<cpx> nodes_;
    std::vector<cpx> strengths_;  // quadrature weight * nu * eps/pi
};

FirstOrderDeformation first_order_deformation(const BeltramiBump& nu, double eps);

// Schwarzian derivative of the inverse Riemann map at a point p strictly
// inside gamma1 (side = interior, map f1) or strictly outside gamma2
// (side = exterior, map f2), computed as -S[f](z)/f'(z)^2 at z = f^{-1}(p).
cpx schwarzian_of_inverse(const Uniformization& u, MapSide side, cpx p);

struct VariationCheck {
    double fd = 0.0;       // centered potential difference per unit eps
    double rhs = 0.0;      // -(1/3 pi) Re of the nu-Schwarzian pairing
    double rel_err = 0.0;  // |fd - rhs| relative to the larger magnitude
};

// Deforms the configuration with +eps and -eps, differences the
// two-loop potential, and compares against the Schwarzian integral over
// the bump support.
VariationCheck variation_check(const TwoLoopConfig& cfg, const BeltramiBump& nu, double eps);

}
