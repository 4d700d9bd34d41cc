#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "loewner/errors.hpp"
#include "loewner/loops.hpp"
#include "loewner/uniformize.hpp"

using namespace loewner;

namespace {

const double PI = 3.14159265358979323846;

struct CircleDesc {
    cpx c;
    double r;
};

// circumcircle through three points
CircleDesc circle_through(cpx a, cpx b, cpx c)
{
    const cpx num = std::norm(a) * (b - c) + std::norm(b) * (c - a) + std::norm(c) * (a - b);
    const cpx den = std::conj(a) * (b - c) + std::conj(b) * (c - a) + std::conj(c) * (a - b);
    const cpx z0 = num / den;
    return {z0, std::abs(a - z0)};
}

CircleDesc image_circle(const MoebiusMap& m, cpx c, double r)
{
    return circle_through(m(c + r), m(c - r), m(c + cpx(0.0, r)));
}

// Modulus of the annulus between two disjoint nested circles, by mapping
// the pencil's common symmetric points to 0 and infinity: with the outer
// circle centered at 0 (radius R) and the inner at distance s (radius r),
// alpha = (s^2 + R^2 - r^2)/(2s), beta = sqrt(alpha^2 - R^2), and
// T(z) = (z - (alpha - beta))/(z - (alpha + beta)) makes them concentric.
double two_circle_modulus(CircleDesc inner, CircleDesc outer)
{
    const double s = std::abs(inner.c - outer.c);
    const double R = outer.r, r = inner.r;
    if (s < 1e-12) return std::log(R / r) / (2.0 * PI);
    const double alpha = (s * s + R * R - r * r) / (2.0 * s);
    const double beta = std::sqrt(alpha * alpha - R * R);
    auto T = [&](double x) {
        return std::abs((x - (alpha - beta)) / (x - (alpha + beta)));
    };
    return std::abs(std::log(T(s + r) / T(R))) / (2.0 * PI);
}

Loop pad_degree(const Loop& g, int deg)
{
    std::vector<cpx> c(2 * deg + 1, cpx(0.0));
    for (int k = -g.degree(); k <= g.degree(); ++k) c[deg + k] = g.coeff(k);
    return Loop(std::move(c));
}

TwoLoopConfig perturbed_config()
{
    // inner: tiny circle of radius e^{-2 pi}; outer: z + 0.05 z^{-2} image
    // of the unit circle, an analytic non-circular loop
    return TwoLoopConfig(Loop::circle(0.0, std::exp(-2.0 * PI)),
                         Loop({cpx(0.05), 0.0, 0.0, cpx(1.0), 0.0}));
}

}  // namespace

TEST_CASE("interior disk map of circles is the exact scaling")
{
    for (const double r : {1.0, 0.37, 2.5}) {
        const ConformalMapSeries f = disk_map(Loop::circle(0.0, r), MapSide::interior);
        CHECK(std::abs(f.coeffs[1] - r) < 1e-12);
        double rest = 0.0;
        for (std::size_t m = 2; m < f.coeffs.size(); ++m)
            rest = std::max(rest, std::abs(f.coeffs[m]));
        CHECK(rest < 1e-12);
        CHECK(std::abs(f.coeffs[0]) < 1e-14);
        CHECK(std::abs(f.eval(cpx(0.25, 0.25)) - cpx(0.25 * r, 0.25 * r)) < 1e-12);
        CHECK(std::abs(f.deriv(cpx(0.1, 0.0)) - r) < 1e-11);
    }
    CHECK_THROWS_AS(disk_map(Loop::circle(cpx(5.0, 0.0), 1.0), MapSide::interior),
                    validation_error);
}

TEST_CASE("exterior disk map of circles")
{
    for (const double r : {1.0, 0.4, 3.0}) {
        const ConformalMapSeries f = disk_map(Loop::circle(0.0, r), MapSide::exterior);
        CHECK(std::abs(f.coeffs[0] - r) < 1e-12);
        double rest = 0.0;
        for (std::size_t m = 1; m < f.coeffs.size(); ++m)
            rest = std::max(rest, std::abs(f.coeffs[m]));
        CHECK(rest < 1e-12);
        // far-field behavior f(z) ~ r z
        CHECK(std::abs(f.eval(cpx(10.0, 3.0)) - r * cpx(10.0, 3.0)) < 1e-10);
        CHECK(std::abs(f.deriv(cpx(0.0, 5.0)) - r) < 1e-12);
    }
}

TEST_CASE("interior map recovers a known univalent polynomial")
{
    // boundary sampled from p(z) = z + 0.1 z^2 on |z| = 1
    const int n = 64;
    std::vector<cpx> s(n);
    for (int j = 0; j < n; ++j) {
        const cpx w = std::polar(1.0, 2.0 * PI * j / n);
        s[j] = w + 0.1 * w * w;
    }
    const ConformalMapSeries f = disk_map(Loop::fit(s, 2), MapSide::interior);
    CHECK(std::abs(f.coeffs[1] - 1.0) < 1e-8);
    CHECK(std::abs(f.coeffs[2] - 0.1) < 1e-8);
    double rest = 0.0;
    for (std::size_t m = 3; m < f.coeffs.size(); ++m)
        rest = std::max(rest, std::abs(f.coeffs[m]));
    CHECK(rest < 1e-8);
}

TEST_CASE("exterior map recovers a known univalent Laurent polynomial")
{
    // p(z) = z + 0.05 z^{-2} is univalent on |z| > 1; E(w) = 1 + 0.05 w^3
    const int n = 64;
    std::vector<cpx> s(n);
    for (int j = 0; j < n; ++j) {
        const cpx w = std::polar(1.0, 2.0 * PI * j / n);
        s[j] = w + 0.05 / (w * w);
    }
    const ConformalMapSeries f = disk_map(Loop::fit(s, 2), MapSide::exterior);
    CHECK(std::abs(f.coeffs[0] - 1.0) < 1e-9);
    CHECK(std::abs(f.coeffs[3] - 0.05) < 1e-9);
    CHECK(std::abs(f.coeffs[1]) < 1e-9);
    CHECK(std::abs(f.coeffs[2]) < 1e-9);
    const cpx z(1.7, 0.9);
    CHECK(std::abs(f.eval(z) - (z + 0.05 / (z * z))) < 1e-9);
    CHECK(std::abs(f.deriv(z) - (1.0 - 0.1 / (z * z * z))) < 1e-8);
    CHECK(std::abs(f.deriv2(z) - 0.3 / (z * z * z * z)) < 1e-8);
    CHECK(std::abs(f.deriv3(z) + 1.2 / (z * z * z * z * z)) < 1e-8);
}

TEST_CASE("concentric circle pairs uniformize to themselves")
{
    for (const double tau0 : {0.3, 1.0}) {
        const double rho = std::exp(-2.0 * PI * tau0);
        // plain constructor, so nothing is cached and the solver runs
        const TwoLoopConfig cfg(Loop::circle(0.0, rho), Loop::circle(0.0, 1.0));
        const Uniformization u = annulus_uniformize(cfg);
        CHECK(std::abs(u.tau - tau0) < 1e-10);
        CHECK(u.boundary_residual < 1e-11);
        CHECK(std::abs(u.f1.coeffs[1] - rho) < 1e-11);
        CHECK(std::abs(u.f2.coeffs[0] - 1.0) < 1e-11);
        CHECK(std::abs(u.fA.laurent.pos[1] - 1.0) < 1e-10);
        CHECK(std::abs(u.fA.eval(cpx(0.5, 0.3)) - cpx(0.5, 0.3)) < 1e-10);
        CHECK(std::abs(log_deriv_ratio(u)) < 1e-10);
    }
}

TEST_CASE("moebius images of circle pairs match the two-circle modulus")
{
    // oracle self-check: the modulus formula is invariant under a Moebius
    // map of both circles
    {
        const CircleDesc in0{cpx(0.1, 0.05), 0.2}, out0{cpx(0.0, 0.0), 1.0};
        const MoebiusMap m = MoebiusMap::normalized(1.0, cpx(0.3, -0.1), cpx(0.15, 0.1), 1.0);
        const double t0 = two_circle_modulus(in0, out0);
        const double t1 = two_circle_modulus(image_circle(m, in0.c, in0.r),
                                             image_circle(m, out0.c, out0.r));
        CHECK(t0 == doctest::Approx(t1).epsilon(1e-12));
    }

    std::mt19937 rng(777u);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * PI);
    std::uniform_real_distribution<double> rad(0.1, 0.25);
    const double taus[3] = {0.35, 0.8, 1.1};
    for (int trial = 0; trial < 3; ++trial) {
        const double tau0 = taus[trial];
        const double rho = std::exp(-2.0 * PI * tau0);
        const MoebiusMap m = MoebiusMap::normalized(
            1.0, std::polar(rad(rng), ang(rng)), std::polar(rad(rng), ang(rng)), 1.0);
        const double want = two_circle_modulus(image_circle(m, 0.0, rho),
                                               image_circle(m, 0.0, 1.0));
        const TwoLoopConfig cfg = apply_moebius(m, make_circle_pair(tau0));
        const Uniformization& u = cfg.uniformization();
        CHECK(std::abs(u.tau - want) < 1e-6);
        CHECK(u.boundary_residual < 1e-8);
    }
}

TEST_CASE("perturbed configuration is self-convergent under refinement")
{
    const TwoLoopConfig lo = perturbed_config();
    const Uniformization& ul = lo.uniformization();
    CHECK(ul.boundary_residual < 1e-8);

    // padding with zero coefficients forces the solver onto a finer grid
    const TwoLoopConfig hi(pad_degree(lo.gamma1(), 63), pad_degree(lo.gamma2(), 63));
    const Uniformization& uh = hi.uniformization();
    CHECK(uh.boundary_residual < 1e-8);

    const double extrap = uh.tau + (uh.tau - ul.tau);
    CHECK(std::abs(ul.tau - extrap) < 1e-6);
    CHECK(std::abs(ul.tau - uh.tau) < 1e-8);
    CHECK(std::abs(log_deriv_ratio(ul) - log_deriv_ratio(uh)) < 1e-8);

    // fixed rotational gauge: f_A' is positive real at z = rho
    const cpx dA = ul.fA.deriv(cpx(ul.fA.laurent.rho, 0.0));
    CHECK(std::abs(std::arg(dA)) < 1e-9);
}

TEST_CASE("modulus responds exactly to radial shrinking of the inner circle")
{
    const double rho = std::exp(-2.0 * PI * 0.5);
    const double s = 0.8;
    const TwoLoopConfig a(Loop::circle(0.0, rho), Loop::circle(0.0, 1.0));
    const TwoLoopConfig b(Loop::circle(0.0, s * rho), Loop::circle(0.0, 1.0));
    const double ta = annulus_uniformize(a).tau;
    const double tb = annulus_uniformize(b).tau;
    CHECK(tb - ta == doctest::Approx(-std::log(s) / (2.0 * PI)).epsilon(1e-12));
}

TEST_CASE("log derivative ratio is scale invariant")
{
    const TwoLoopConfig base = perturbed_config();
    const double v0 = log_deriv_ratio(base.uniformization());

    const double s = 3.0;
    std::vector<cpx> c1, c2;
    for (int k = -base.gamma1().degree(); k <= base.gamma1().degree(); ++k)
        c1.push_back(s * base.gamma1().coeff(k));
    for (int k = -base.gamma2().degree(); k <= base.gamma2().degree(); ++k)
        c2.push_back(s * base.gamma2().coeff(k));
    const TwoLoopConfig scaled{Loop(c1), Loop(c2)};
    const Uniformization us = annulus_uniformize(scaled);
    CHECK(std::abs(log_deriv_ratio(us) - v0) < 1e-10);
    CHECK(std::abs(us.tau - base.uniformization().tau) < 1e-10);
}

TEST_CASE("uniformization is deterministic across repeated runs")
{
    const TwoLoopConfig cfg = perturbed_config();
    const Uniformization u1 = annulus_uniformize(cfg);
    const Uniformization u2 = annulus_uniformize(cfg);
    CHECK(u1.tau == u2.tau);
    CHECK(u1.boundary_residual == u2.boundary_residual);
    REQUIRE(u1.fA.laurent.pos.size() == u2.fA.laurent.pos.size());
    for (std::size_t k = 0; k < u1.fA.laurent.pos.size(); ++k)
        CHECK(u1.fA.laurent.pos[k] == u2.fA.laurent.pos[k]);
}
