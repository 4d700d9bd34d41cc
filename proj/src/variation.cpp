#include "loewner/variation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "loewner/errors.hpp"
#include "loewner/fft.hpp"
#include "loewner/potentials.hpp"
#include "loewner/quadrature.hpp"

namespace loewner {
namespace {

constexpr double PI = 3.14159265358979323846;

// polar product rule over the support disk; weights carry the area
// measure, values of nu are left to the caller
void bump_grid(const BeltramiBump& nu, std::vector<cpx>& nodes, std::vector<double>& weights)
{
    const int nr = 48, nt = 96;
    std::vector<double> x, w;
    gauss_legendre(nr, 0.0, nu.radius, x, w);
    nodes.clear();
    weights.clear();
    nodes.reserve(nr * nt);
    weights.reserve(nr * nt);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nt; ++j) {
            nodes.push_back(nu.center + std::polar(x[i], 2.0 * PI * j / nt));
            weights.push_back(w[i] * x[i] * (2.0 * PI / nt));
        }
}

}  // namespace

cpx BeltramiBump::operator()(cpx z) const
{
    const double t = std::norm(z - center) / (radius * radius);
    if (t >= 1.0) return cpx(0.0);
    const double s = 1.0 - t;
    const double s2 = s * s;
    return amplitude * (s2 * s2);
}

FirstOrderDeformation::FirstOrderDeformation(const BeltramiBump& nu, double eps) : nu_(nu)
{
    if (!(nu.radius > 0.0) || !std::isfinite(nu.radius))
        throw validation_error("bump radius must be positive");
    if (!std::isfinite(eps)) throw validation_error("deformation step must be finite");
    std::vector<double> weights;
    bump_grid(nu, nodes_, weights);
    strengths_.resize(nodes_.size());
    for (std::size_t q = 0; q < nodes_.size(); ++q)
        strengths_[q] = weights[q] * nu(nodes_[q]) * (eps / PI);
}

cpx FirstOrderDeformation::operator()(cpx z) const
{
    cpx s = 0.0;
    for (std::size_t q = 0; q < nodes_.size(); ++q) s += strengths_[q] / (nodes_[q] - z);
    return z - s;
}

Loop FirstOrderDeformation::apply(const Loop& g) const
{
    if (curve_distance(g, nu_.center) <= nu_.radius)
        throw validation_error("deformation support touches a loop");

    const int n = 1024;
    std::vector<cpx> img(n);
    for (int j = 0; j < n; ++j) img[j] = (*this)(g.point(2.0 * PI * j / n));
    const std::vector<cpx> hat = fourier_coeffs(img);

    double top = 0.0;
    for (const cpx& c : hat) top = std::max(top, std::abs(c));
    auto tail_above = [&](int M) {
        double t = 0.0;
        for (int k = M + 1; k <= n / 2 - 1; ++k) {
            t = std::max(t, std::abs(hat[k]));
            t = std::max(t, std::abs(hat[n - k]));
        }
        return t;
    };
    int M = std::max(g.degree(), 1);
    while (M < 256 && tail_above(M) > 1e-12 * top) ++M;

    std::vector<cpx> c(2 * M + 1);
    for (int k = -M; k <= M; ++k) c[M + k] = hat[(k + n) % n];
    return Loop(std::move(c));
}

FirstOrderDeformation first_order_deformation(const BeltramiBump& nu, double eps)
{
    return FirstOrderDeformation(nu, eps);
}

cpx schwarzian_of_inverse(const Uniformization& u, MapSide side, cpx p)
{
    const ConformalMapSeries& f = (side == MapSide::interior) ? u.f1 : u.f2;

    cpx z;
    if (side == MapSide::interior) {
        if (f.coeffs.size() < 2 || f.coeffs[1] == cpx(0.0))
            throw validation_error("interior map series degenerate");
        z = f.domain_radius * p / f.coeffs[1];
    } else {
        const cpx e1 = f.coeffs.size() > 1 ? f.coeffs[1] : cpx(0.0);
        z = (p - e1) / f.coeffs[0];
    }

    const double scale = std::max(1.0, std::abs(z));
    for (int it = 0; it < 80; ++it) {
        const cpx r = f.eval(z) - p;
        const cpx d = f.deriv(z);
        if (!(std::abs(d) > 1e-300))
            throw convergence_error("map derivative vanished while inverting");
        const cpx step = r / d;
        z -= step;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw nonfinite_error("inverse map iteration left the domain");
        if (std::abs(step) < 1e-14 * scale) break;
    }
    if (std::abs(f.eval(z) - p) > 1e-8 * std::max(1.0, std::abs(p)))
        throw convergence_error("inverse map iteration did not converge");

    const cpx d1 = f.deriv(z);
    const cpx q = f.deriv2(z) / d1;
    const cpx S = f.deriv3(z) / d1 - 1.5 * q * q;
    return -S / (d1 * d1);
}

VariationCheck variation_check(const TwoLoopConfig& cfg, const BeltramiBump& nu, double eps)
{
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw validation_error("finite-difference step must be positive");
    if (!(nu.radius > 0.0)) throw validation_error("bump radius must be positive");
    if (std::abs(nu.amplitude) > 0.1)
        throw validation_error("bump amplitude exceeds the linearization range");

    const Loop& g1 = cfg.gamma1();
    const Loop& g2 = cfg.gamma2();
    if (curve_distance(g1, nu.center) <= nu.radius ||
        curve_distance(g2, nu.center) <= nu.radius)
        throw validation_error("bump support touches a loop");

    const int n1 = std::max(64, 8 * g1.degree());
    const int n2 = std::max(64, 8 * g2.degree());
    const bool in_d1 = winding_number(g1.sample(n1), nu.center) == 1;
    const bool in_d2 = winding_number(g2.sample(n2), nu.center) == 0;
    if (!in_d1 && !in_d2)
        throw validation_error("bump support must lie inside one complementary disk");
    const MapSide side = in_d1 ? MapSide::interior : MapSide::exterior;

    const FirstOrderDeformation dp(nu, eps), dm(nu, -eps);
    const TwoLoopConfig cp{dp.apply(g1), dp.apply(g2)};
    const TwoLoopConfig cm{dm.apply(g1), dm.apply(g2)};

    VariationCheck out;
    out.fd = (lpot_two(cp).total - lpot_two(cm).total) / (2.0 * eps);

    const Uniformization& u = cfg.uniformization();
    std::vector<cpx> nodes;
    std::vector<double> weights;
    bump_grid(nu, nodes, weights);
    cpx pairing = 0.0;
    for (std::size_t q = 0; q < nodes.size(); ++q) {
        const cpx nv = nu(nodes[q]);
        if (nv == cpx(0.0)) continue;
        pairing += weights[q] * nv * schwarzian_of_inverse(u, side, nodes[q]);
    }
    out.rhs = -pairing.real() / (3.0 * PI);

    const double den = std::max(std::abs(out.fd), std::abs(out.rhs));
    out.rel_err = den > 0.0 ? std::abs(out.fd - out.rhs) / den : 0.0;
    return out;
}

}
