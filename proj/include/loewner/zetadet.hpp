#pragma once
#include <functional>
#include <vector>

#include "loewner/fft.hpp"

namespace loewner {

struct FlatDisk {
    double r;  // radius > 0
};

struct FlatAnnulus {
    double r1, r2;  // 0 < r1 < r2
};

// Samples of a smooth real field sigma on a polar quadrature grid, with
// caller-supplied boundary trace and outward normal derivative. Bulk
// layout is row-major: sigma[i*nth + j] at radius rnodes[i], angle
// 2 pi j / nth. For a disk field r_inner is 0 and the inner boundary
// arrays stay empty.
struct ConformalFactorField {
    int nr = 0, nth = 0;
    double r_inner = 0.0, r_outer = 0.0;
    std::vector<double> rnodes, rweights;  // Gauss-Legendre on [r_inner, r_outer]
    std::vector<double> sigma;
    std::vector<double> sig_outer, dn_outer;
    std::vector<double> sig_inner, dn_inner;
};

// Build a field by evaluating sigma and its gradient (passed as the
// complex number sigma_x + i sigma_y) on the quadrature grid. Grid sizes
// must be at least 8.
ConformalFactorField sample_field(const FlatDisk& d, int nr, int nth,
                                  const std::function<double(cpx)>& sigma,
                                  const std::function<cpx(cpx)>& grad);
ConformalFactorField sample_field(const FlatAnnulus& a, int nr, int nth,
                                  const std::function<double(cpx)>& sigma,
                                  const std::function<cpx(cpx)>& grad);

// log det of the flat-metric Dirichlet Laplacian:
//   disk:    -(1/6)log 2 - (1/2)log pi - (1/3)log r - 2 zeta'(-1) - 5/12
//   annulus: -log pi + (1/3)(log r1 - log r2) + log(log r2 - log r1)
//            + 2 log phi((r1/r2)^2)
double det_disk(const FlatDisk& d);
double det_annulus(const FlatAnnulus& a);

// (1/2) \iint |grad sigma|^2 dA. Angular derivative is spectral, radial
// derivative uses the collocation differentiation matrix on the
// Gauss-Legendre nodes; both converge spectrally for analytic fields.
double dirichlet_energy(const ConformalFactorField& f);

// \oint k sigma ds summed over boundary components, k the geodesic
// curvature (1/r on the outer circle, -1/r on the inner one).
double boundary_curvature_integral(const ConformalFactorField& f);

// \oint (dN sigma) ds, outward normal.
double boundary_normal_integral(const ConformalFactorField& f);

// psi(sigma) = -(1/6pi) \iint (1/2)|grad sigma|^2
//              -(1/6pi) \oint (k sigma + (3/2) dN sigma)
// The domain argument is cross-checked against the field geometry.
double polyakov_alvarez(const ConformalFactorField& f, const FlatDisk& d);
double polyakov_alvarez(const ConformalFactorField& f, const FlatAnnulus& a);

// A(sigma) = (1/12pi) \iint (1/2)|grad sigma|^2 + (1/12pi) \oint k sigma
double conformal_anomaly(const ConformalFactorField& f, const FlatDisk& d);
double conformal_anomaly(const ConformalFactorField& f, const FlatAnnulus& a);

}
