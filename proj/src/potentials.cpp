#include "loewner/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "loewner/errors.hpp"
#include "loewner/fft.hpp"
#include "loewner/quadrature.hpp"
#include "loewner/series.hpp"
#include "loewner/specfun.hpp"

namespace loewner {
namespace {

constexpr double PI = 3.14159265358979323846;

// Integral of |sum g_k u^k|^2 over the unit disk. Angular orthogonality
// reduces the integrand on |u| = r to 2 pi sum |g_k|^2 r^{2k}; the node
// count makes the radial Gauss-Legendre rule exact for the resulting
// polynomial.
double parseval_disk(const std::vector<cpx>& g)
{
    const int K = static_cast<int>(g.size()) - 1;
    if (K < 0) return 0.0;
    const int nq = std::max(64, K + 1);
    std::vector<double> x, w;
    gauss_legendre(nq, 0.0, 1.0, x, w);
    double total = 0.0;
    for (int i = 0; i < nq; ++i) {
        const double r2 = x[i] * x[i];
        double s = 0.0, rp = x[i];
        for (int k = 0; k <= K; ++k) {
            s += std::norm(g[k]) * rp;
            rp *= r2;
        }
        total += w[i] * s;
    }
    return 2.0 * PI * total;
}

std::vector<cpx> padded(std::vector<cpx> a, std::size_t n)
{
    if (a.size() < n) a.resize(n, cpx(0.0));
    return a;
}

// Formal log with the truncation extended until its own coefficient tail
// has decayed. A polynomial of degree d has a log series reaching far
// beyond degree d; cutting at the input length drops real mass.
std::vector<cpx> log_series_extended(const std::vector<cpx>& a)
{
    for (std::size_t P = std::max<std::size_t>(2 * a.size(), 64);; P *= 2) {
        const std::vector<cpx> lg = series_log(padded(a, P));
        double top = 0.0, tail = 0.0;
        for (std::size_t k = 1; k < lg.size(); ++k) top = std::max(top, std::abs(lg[k]));
        for (std::size_t k = lg.size() - lg.size() / 8; k < lg.size(); ++k)
            tail = std::max(tail, std::abs(lg[k]));
        const double scale = std::max(top, 1.0);
        if (tail <= 1e-13 * scale) return lg;
        if (P >= 8192) {
            if (tail > 1e-10 * scale)
                throw convergence_error("log series tail does not decay; map too close to singular");
            return lg;
        }
    }
}

// 1/a as a power series with a decayed tail, a_0 != 0.
std::vector<cpx> reciprocal_extended(const std::vector<cpx>& a)
{
    std::vector<cpx> lg = log_series_extended(a);
    for (cpx& c : lg) c = -c;
    return series_exp(lg);
}

std::vector<cpx> vec_sub(const std::vector<cpx>& a, const std::vector<cpx>& b)
{
    std::vector<cpx> out(std::max(a.size(), b.size()), cpx(0.0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return out;
}

std::vector<cpx> shift_up(std::vector<cpx> a)
{
    a.insert(a.begin(), cpx(0.0));
    return a;
}

// Coefficients of f(u)/u for f with f(0) = 0.
std::vector<cpx> divide_by_u(const std::vector<cpx>& a)
{
    return std::vector<cpx>(a.begin() + 1, a.end());
}

// d/du log f'(u) for an interior map given by its coefficient list.
std::vector<cpx> log_deriv_of_derivative(const std::vector<cpx>& coeffs)
{
    std::vector<cpx> d = poly_derivative(coeffs);
    if (d.empty() || d[0] == cpx(0.0))
        throw validation_error("conformal map derivative vanishes at the center");
    return poly_derivative(log_series_extended(d));
}

// E - w E' = f' in the w variable, for the exterior map f(z) = z E(w).
std::vector<cpx> exterior_derivative_series(const std::vector<cpx>& E)
{
    std::vector<cpx> D(E.size());
    for (std::size_t m = 0; m < E.size(); ++m) D[m] = (1.0 - double(m)) * E[m];
    if (D[0] == cpx(0.0))
        throw validation_error("conformal map derivative vanishes at infinity");
    return D;
}

// w f''/f' for the exterior map as a series in w.
std::vector<cpx> exterior_preschwarzian_series(const std::vector<cpx>& E)
{
    const std::vector<cpx> Dinv = reciprocal_extended(exterior_derivative_series(E));
    const std::vector<cpx> E2 = poly_derivative(poly_derivative(E));
    return shift_up(series_mul(E2, Dinv, Dinv.size()));
}

template <class F>
double ring_integral(double rho, int nth, F f)
{
    const int nr = 96;
    std::vector<double> x, w;
    gauss_legendre(nr, rho, 1.0, x, w);
    double total = 0.0;
    for (int i = 0; i < nr; ++i) {
        double ang = 0.0;
        for (int j = 0; j < nth; ++j)
            ang += f(std::polar(x[i], 2.0 * PI * j / nth));
        total += w[i] * x[i] * ang * (2.0 * PI / nth);
    }
    return total;
}

int angular_points(const LaurentSeries& L)
{
    return std::max<int>(256, 2 * static_cast<int>(L.pos.size() + L.neg.size()));
}

// Zeros of f' inside the ring would make |f''/f'|^2 non-integrable;
// they are detected by the argument principle on the boundary circles.
void require_ring_derivative_nonvanishing(const LaurentSeries& L)
{
    const int n = 1024;
    auto winding = [&](double R) {
        double total = 0.0;
        cpx prev = L.deriv(std::polar(R, 0.0));
        for (int j = 1; j <= n; ++j) {
            const cpx cur = L.deriv(std::polar(R, 2.0 * PI * j / n));
            if (!(std::abs(prev) > 1e-12) || !(std::abs(cur) > 1e-12))
                throw convergence_error("annulus map derivative vanishes on a boundary circle");
            total += std::arg(cur / prev);
            prev = cur;
        }
        return total / (2.0 * PI);
    };
    if (std::lround(winding(1.0) - winding(L.rho)) != 0)
        throw convergence_error("annulus map derivative vanishes in the interior");
}

// Boundary angle minimizing |f(R e^{ia}) - target|, Newton warm-started
// at `a`. Used to match interface points across charts.
double nearest_boundary_angle(const ConformalMapSeries& f, double R, cpx target, double a)
{
    for (int it = 0; it < 60; ++it) {
        const cpx z = std::polar(R, a);
        const cpx F = f.eval(z) - target;
        const cpx zp = cpx(0.0, 1.0) * z;
        const cpx Fp = f.deriv(z) * zp;
        const cpx Fpp = f.deriv2(z) * zp * zp - f.deriv(z) * z;
        const double g = 2.0 * (std::conj(F) * Fp).real();
        double h = 2.0 * (std::norm(Fp) + (std::conj(F) * Fpp).real());
        if (h <= 0.0) h = 2.0 * std::norm(Fp) + 1e-300;
        double step = std::clamp(g / h, -0.5, 0.5);
        a -= step;
        if (std::abs(step) < 1e-14) break;
    }
    return a;
}

double scan_boundary_angle(const ConformalMapSeries& f, double R, cpx target)
{
    double best = 0.0, bestd = 1e300;
    for (int j = 0; j < 512; ++j) {
        const double a = 2.0 * PI * j / 512;
        const double d = std::abs(f.eval(std::polar(R, a)) - target);
        if (d < bestd) { bestd = d; best = a; }
    }
    return best;
}

double wrap_pi(double x) { return std::remainder(x, 2.0 * PI); }

// Continuous arg along a closed loop of samples; throws if the samples
// wind around 0, since then no continuous branch exists.
std::vector<double> unwrapped_args(const std::vector<cpx>& g, const char* what)
{
    std::vector<double> a(g.size());
    if (g.empty()) return a;
    a[0] = std::arg(g[0]);
    for (std::size_t j = 1; j < g.size(); ++j)
        a[j] = a[j - 1] + std::arg(g[j] / g[j - 1]);
    const double closure = a.back() + std::arg(g.front() / g.back()) - a.front();
    if (std::abs(closure) > PI)
        throw convergence_error(std::string("no continuous branch: ") + what +
                                " winds around zero");
    return a;
}

// Series in w for log(z f2'(z)/f2(z)) = log((E - w E')/E), vanishing at
// w = 0 so the branch is anchored at infinity.
std::vector<cpx> exterior_winding_log(const std::vector<cpx>& E)
{
    return vec_sub(log_series_extended(exterior_derivative_series(E)),
                   log_series_extended(E));
}

// Series in u for log(u C'(u)/C(u)) for the interior map, vanishing at
// u = 0.
std::vector<cpx> interior_winding_log(const std::vector<cpx>& C)
{
    std::vector<cpx> num(C.size() - 1);
    for (std::size_t m = 0; m + 1 < C.size(); ++m) num[m] = double(m + 1) * C[m + 1];
    return vec_sub(log_series_extended(num), log_series_extended(divide_by_u(C)));
}

// Verifies that the piecewise winding function glues continuously (mod
// 2 pi) across one interface circle of the annulus chart.
void check_interface(const Uniformization& u, bool outer)
{
    const int nb = 256;
    const double R = outer ? 1.0 : u.fA.laurent.rho;
    const ConformalMapSeries& other = outer ? u.f2 : u.f1;
    const double Ro = outer ? 1.0 : u.f1.domain_radius;
    const std::vector<cpx> lg =
        outer ? exterior_winding_log(u.f2.coeffs) : interior_winding_log(u.f1.coeffs);

    std::vector<cpx> gA(nb);
    std::vector<cpx> img(nb);
    for (int j = 0; j < nb; ++j) {
        const cpx z = std::polar(R, 2.0 * PI * j / nb);
        img[j] = u.fA.eval(z);
        gA[j] = z * u.fA.deriv(z) / img[j];
    }
    const std::vector<double> phiA = unwrapped_args(gA, "annulus chart z f'/f");

    double worst = 0.0;
    double alpha = scan_boundary_angle(other, Ro, img[0]);
    for (int j = 0; j < nb; ++j) {
        alpha = nearest_boundary_angle(other, Ro, img[j], alpha);
        // chart variable of the adjacent map at the matched point
        const cpx v = outer ? std::polar(1.0, -alpha) : std::polar(1.0, alpha);
        const double phi = poly_eval(lg, v).imag();
        worst = std::max(worst, std::abs(wrap_pi(phi - phiA[j])));
    }
    if (worst > 1e-6)
        throw convergence_error("winding function branch mismatch across the " +
                                std::string(outer ? "outer" : "inner") +
                                " interface: " + std::to_string(worst));
}

}  // namespace

double lpot_circles(double tau)
{
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw validation_error("modulus must be positive and finite");
    return -std::log(tau) - 2.0 * log_euler_phi(std::exp(-4.0 * PI * tau));
}

double blm_interaction_circles(double tau)
{
    return lpot_circles(tau) - lpot_circles(1.0);
}

double preschwarzian_energy(const ConformalMapSeries& f)
{
    switch (f.kind) {
    case MapKind::interior_disk:
        return parseval_disk(log_deriv_of_derivative(f.coeffs));
    case MapKind::exterior_disk: {
        if (f.coeffs.empty() || f.coeffs[0] == cpx(0.0))
            throw validation_error("exterior map must fix infinity");
        if (f.coeffs.size() <= 2) return 0.0;  // affine in z
        return parseval_disk(exterior_preschwarzian_series(f.coeffs));
    }
    case MapKind::annulus: {
        const LaurentSeries& L = f.laurent;
        require_ring_derivative_nonvanishing(L);
        return ring_integral(L.rho, angular_points(L), [&](cpx z) {
            const cpx d = L.deriv(z);
            if (std::abs(d) < 1e-12)
                throw convergence_error("annulus map derivative vanishes in the interior");
            return std::norm(L.deriv2(z) / d);
        });
    }
    }
    throw validation_error("unknown map kind");
}

PotentialBreakdown lpot_two(const TwoLoopConfig& cfg)
{
    const Uniformization& u = cfg.uniformization();
    PotentialBreakdown b;
    b.circle_term = lpot_circles(u.tau);
    b.I1 = preschwarzian_energy(u.f1);
    b.IA = preschwarzian_energy(u.fA);
    b.I2 = preschwarzian_energy(u.f2);
    b.log_ratio_term = log_deriv_ratio(u);
    b.total = b.circle_term + (b.I1 + b.IA + b.I2) / (12.0 * PI) - b.log_ratio_term / 3.0;
    if (!std::isfinite(b.total)) throw nonfinite_error("two-loop potential is not finite");
    return b;
}

double winding_energy(const Uniformization& u)
{
    // interior disk: |d/du log(u C'/C)|^2 integrated over the unit disk,
    // written as the difference of two analytic logarithmic derivatives
    const std::vector<cpx>& C = u.f1.coeffs;
    const std::vector<cpx> A = log_deriv_of_derivative(C);
    const std::vector<cpx> B = poly_derivative(log_series_extended(divide_by_u(C)));
    const double e_disk = parseval_disk(vec_sub(A, B));

    // exterior: |w E''/(E - w E') + E'/E|^2 over the unit w-disk, which is
    // the w-derivative of the anchored branch log(z f2'/f2)
    const std::vector<cpx>& E = u.f2.coeffs;
    double e_ext = 0.0;
    if (E.size() > 1) e_ext = parseval_disk(poly_derivative(exterior_winding_log(E)));

    // annulus: pointwise |f''/f' - f'/f + 1/z|^2
    const LaurentSeries& LA = u.fA.laurent;
    require_ring_derivative_nonvanishing(LA);
    const double e_ann = ring_integral(LA.rho, angular_points(LA), [&](cpx z) {
        const cpx f = LA.eval(z);
        const cpx d = LA.deriv(z);
        if (std::abs(d) < 1e-12 || std::abs(f) < 1e-12)
            throw convergence_error("annulus map degenerates in the interior");
        return std::norm(LA.deriv2(z) / d - d / f + 1.0 / z);
    });

    check_interface(u, true);
    check_interface(u, false);

    return (e_disk + e_ann + e_ext) / (16.0 * PI);
}

double lpot_two_via_lk(const TwoLoopConfig& cfg)
{
    const Uniformization& u = cfg.uniformization();
    const double S = winding_energy(u);
    return lpot_circles(u.tau) + (4.0 / 3.0) * S - log_deriv_ratio(u) / 6.0;
}

GrunskyData grunsky(const Uniformization& u, int N)
{
    if (N < 1) throw validation_error("grunsky truncation must be positive");
    const std::vector<cpx>& C = u.f1.coeffs;
    const std::vector<cpx>& E = u.f2.coeffs;
    if (C.size() < 2 || E.empty())
        throw validation_error("uniformization series too short for grunsky sums");

    GrunskyData g;
    g.b_minus.assign(N, cpx(0.0));
    g.b_plus.assign(N, cpx(0.0));
    g.beta_pos.assign(N, cpx(0.0));
    g.beta_neg.assign(N, cpx(0.0));

    // log(C(u)/u) - log C'(0): interior coefficients in the scaled variable
    {
        const std::vector<cpx> lg = log_series_extended(divide_by_u(C));
        for (int k = 1; k <= N && k < static_cast<int>(lg.size()); ++k)
            g.b_minus[k - 1] = lg[k];
    }
    // log E(w): exterior coefficients (w = 1/z, so index k is b_{k,0})
    {
        const std::vector<cpx> lg = log_series_extended(E);
        for (int k = 1; k <= N && k < static_cast<int>(lg.size()); ++k)
            g.b_plus[k - 1] = lg[k];
    }

    // log(fA(z)/z) sampled on each boundary circle of the annulus; the
    // Fourier coefficients on |z| = 1 give the nonnegative-index side,
    // those on |z| = rho give the negative side in scaled form.
    const double rho = u.fA.laurent.rho;
    int n = 1024;
    while (n < 4 * N) n *= 2;
    auto log_ratio_samples = [&](double R) {
        std::vector<cpx> ratio(n);
        for (int j = 0; j < n; ++j) {
            const cpx z = std::polar(R, 2.0 * PI * j / n);
            ratio[j] = u.fA.eval(z) / z;
            if (!(std::abs(ratio[j]) > 1e-300))
                throw validation_error("f/z vanishes on the annulus boundary");
        }
        const std::vector<double> args = unwrapped_args(ratio, "annulus chart f/z");
        std::vector<cpx> h(n);
        for (int j = 0; j < n; ++j) h[j] = cpx(std::log(std::abs(ratio[j])), args[j]);
        return fourier_coeffs(h);
    };
    const std::vector<cpx> outer = log_ratio_samples(1.0);
    const std::vector<cpx> inner = log_ratio_samples(rho);
    for (int k = 1; k <= N; ++k) {
        g.beta_pos[k - 1] = outer[k];        // beta_k exactly (radius 1)
        g.beta_neg[k - 1] = inner[n - k];    // beta_{-k} rho^{-k}
    }

    double lhs = 0.0;
    for (int k = 1; k <= N; ++k) {
        const double damp = 1.0 - std::exp(-4.0 * PI * k * u.tau);
        lhs += PI * k * std::norm(g.b_minus[k - 1]);
        lhs += PI * k * std::norm(g.b_plus[k - 1]);
        lhs += PI * k * damp * (std::norm(g.beta_pos[k - 1]) + std::norm(g.beta_neg[k - 1]));
    }
    g.lhs = lhs;
    g.rhs = 2.0 * PI * log_deriv_ratio(u);
    g.gap = g.rhs - g.lhs;
    if (!std::isfinite(g.gap)) throw nonfinite_error("grunsky sums are not finite");
    return g;
}

}
