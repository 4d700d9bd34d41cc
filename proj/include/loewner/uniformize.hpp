#pragma once
#include <vector>

#include "loewner/series.hpp"

namespace loewner {

class Loop;
class TwoLoopConfig;

enum class MapKind { interior_disk, exterior_disk, annulus };
enum class MapSide { interior, exterior };

// Truncated series of a normalized conformal map.
//
// interior_disk: f maps |z| < domain_radius onto the bounded side of a
//   loop with f(0) = 0, f'(0) > 0. To keep coefficients representable for
//   small radii the series is stored against the scaled variable
//   u = z / domain_radius: coeffs[m] is the u^m coefficient of
//   C(u) = f(domain_radius * u), so coeffs[m] = a_m * domain_radius^m.
//
// exterior_disk: f maps |z| > 1 onto the unbounded side with f(inf) = inf,
//   f'(inf) > 0, written f(z) = z * E(1/z); coeffs[m] = e_m of
//   E(w) = sum e_m w^m, e_0 = f'(inf).
//
// annulus: Laurent series on domain_radius < |z| < 1 (see LaurentSeries
//   for the normalized storage of the negative part).
struct ConformalMapSeries {
    MapKind kind = MapKind::interior_disk;
    double domain_radius = 1.0;
    std::vector<cpx> coeffs;
    LaurentSeries laurent;

    cpx eval(cpx z) const;
    cpx deriv(cpx z) const;
    cpx deriv2(cpx z) const;
    cpx deriv3(cpx z) const;
};

struct Uniformization {
    double tau = 0.0;
    ConformalMapSeries f1;  // e^{-2 pi tau} D -> bounded side of gamma1
    ConformalMapSeries fA;  // annulus e^{-2 pi tau} < |z| < 1 -> region between
    ConformalMapSeries f2;  // |z| > 1 -> unbounded side of gamma2
    double boundary_residual = 0.0;
};

// Riemann map of one analytic Jordan loop, solved by a damped
// boundary-correspondence iteration on the polar representation of the
// curve. interior: unit disk onto the bounded side, 0 must lie inside and
// the curve must be starlike enough about it for the iteration to settle.
// exterior: |z| > 1 onto the unbounded side, via inversion through 1/z.
// The truncation is doubled until the boundary residual drops below tol
// or the degree reaches max_n.
ConformalMapSeries disk_map(const Loop& loop, MapSide side,
                            double tol = 1e-10, int max_n = 1024);

// Modulus and all three maps for a validated two-loop configuration.
// Alternates Riemann maps of the two complementary disks until both
// boundary images are concentric circles, then reconstructs the annulus
// map from the tracked boundary correspondences. The rotational gauge is
// fixed by arg fA'(e^{-2 pi tau}) = 0.
Uniformization annulus_uniformize(const TwoLoopConfig& cfg,
                                  double tol = 1e-8, int max_n = 1024);

// log |f2'(inf)| - log |f1'(0)|.
double log_deriv_ratio(const Uniformization& u);

}
