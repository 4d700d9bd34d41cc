#include "loewner/uniformize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "loewner/errors.hpp"
#include "loewner/loops.hpp"

namespace loewner {

namespace {

const double pi = 3.14159265358979323846;

double wrap_angle(double x) { return std::remainder(x, 2.0 * pi); }

int pow2_at_least(int m)
{
    int n = 1;
    while (n < m) n *= 2;
    return n;
}

// Trigonometric interpolant of uniform samples of a closed analytic curve.
// Index j is the material parameter t_j = 2 pi j / n.
struct TrigCurve {
    int kmin = 0;
    std::vector<cpx> coef, dcoef;  // coef[k - kmin] multiplies e^{i k t}

    explicit TrigCurve(const std::vector<cpx>& samples)
    {
        const int n = static_cast<int>(samples.size());
        const std::vector<cpx> hat = fourier_coeffs(samples);
        kmin = -(n / 2);
        coef.assign(n, cpx(0.0));
        for (int j = 0; j < n; ++j) {
            const int f = j <= (n - 1) / 2 ? j : j - n;
            coef[f - kmin] = hat[j];
        }
        dcoef.resize(n);
        for (int m = 0; m < n; ++m) dcoef[m] = cpx(0.0, double(m + kmin)) * coef[m];
    }

    cpx horner(const std::vector<cpx>& a, double t) const
    {
        const cpx w = std::polar(1.0, t);
        cpx s = 0.0;
        for (std::size_t i = a.size(); i-- > 0;) s = s * w + a[i];
        return s * std::polar(1.0, kmin * t);
    }
    cpx point(double t) const { return horner(coef, t); }
    cpx deriv(double t) const { return horner(dcoef, t); }
};

// Solve arg(curve(th_j)) = phi_j (mod 2 pi) by Newton warm-started from
// the incoming th. Requires the curve to be starlike about 0 so the polar
// representation is single-valued. Returns the worst angular residual.
double polar_solve(const TrigCurve& c, const std::vector<double>& phi,
                   std::vector<double>& th)
{
    double worst = 0.0;
    for (std::size_t j = 0; j < phi.size(); ++j) {
        double t = th[j];
        double f = 0.0;
        for (int it = 0; it < 40; ++it) {
            const cpx z = c.point(t);
            f = std::arg(z * std::polar(1.0, -phi[j]));
            if (std::abs(f) < 1e-14) break;
            const double fp = (c.deriv(t) / z).imag();
            t -= std::clamp(f / fp, -0.4, 0.4);
        }
        th[j] = t;
        worst = std::max(worst, std::abs(f));
    }
    return worst;
}

// Circle homeomorphism phi(t) = t + p(t), p periodic, from samples at the
// uniform grid; supports evaluation off-grid and inversion.
struct PeriodicMonotone {
    TrigCurve p;

    static std::vector<cpx> deviation(const std::vector<double>& phi)
    {
        const int n = static_cast<int>(phi.size());
        std::vector<cpx> d(n);
        for (int j = 0; j < n; ++j) d[j] = phi[j] - 2.0 * pi * j / n;
        return d;
    }
    explicit PeriodicMonotone(const std::vector<double>& phi) : p(deviation(phi)) {}

    double operator()(double t) const { return t + p.point(t).real(); }
    double slope(double t) const { return 1.0 + p.deriv(t).real(); }

    double inverse(double y) const
    {
        double t = y;
        for (int it = 0; it < 8; ++it) t -= 0.9 * wrap_angle((*this)(t)-y);
        for (int it = 0; it < 60; ++it) {
            const double f = wrap_angle((*this)(t)-y);
            if (std::abs(f) < 1e-14) break;
            t -= std::clamp(f / slope(t), -0.4, 0.4);
        }
        return t;
    }
};

struct TheoResult {
    std::vector<cpx> f;       // power series, f[0] = 0, f[1] = f'(0) > 0
    std::vector<double> phi;  // boundary angles arg f(e^{i t_j})
    double delta = 0.0;       // last correspondence update
    double neg_resid = 0.0;   // analyticity residual of log(f(z)/z)
};

// Interior Riemann map of the region bounded by the curve and containing
// 0, by the classical boundary-correspondence iteration
//   phi <- t + (periodic conjugate of log |curve(theta(phi))|),
// damped to half steps whenever the update grows.
TheoResult theodorsen(const TrigCurve& curve, int n, double tol = 1e-13,
                      int maxit = 300)
{
    std::vector<double> t(n), phi(n), th(n), logrho(n);
    for (int j = 0; j < n; ++j) t[j] = phi[j] = th[j] = 2.0 * pi * j / n;

    double delta = 1e300, prev = 1e300;
    for (int it = 0; it < maxit; ++it) {
        if (polar_solve(curve, phi, th) > 1e-8)
            throw convergence_error(
                "boundary correspondence: curve not starlike enough about 0");
        for (int j = 0; j < n; ++j) logrho[j] = std::log(std::abs(curve.point(th[j])));
        const std::vector<double> conj = conjugate_periodic(logrho);
        delta = 0.0;
        for (int j = 0; j < n; ++j)
            delta = std::max(delta, std::abs(t[j] + conj[j] - phi[j]));
        const double lambda = (it > 2 && delta > prev) ? 0.5 : 1.0;
        for (int j = 0; j < n; ++j) phi[j] += lambda * (t[j] + conj[j] - phi[j]);
        prev = delta;
        if (delta < tol) break;
    }
    if (!(delta < std::max(100.0 * tol, 1e-10)))
        throw convergence_error("boundary correspondence iteration stalled");

    polar_solve(curve, phi, th);
    std::vector<cpx> g(n);
    for (int j = 0; j < n; ++j)
        g[j] = cpx(std::log(std::abs(curve.point(th[j]))), phi[j] - t[j]);
    const std::vector<cpx> G = fourier_coeffs(g);

    TheoResult R;
    R.phi = std::move(phi);
    R.delta = delta;
    for (int j = 0; j < n; ++j) {
        const int f = j <= (n - 1) / 2 ? j : j - n;
        if (f < 0) R.neg_resid = std::max(R.neg_resid, std::abs(G[j]));
    }
    // f(z) = z exp(sum_{k>=0} c_k z^k); c_0 is real since the conjugate is
    // mean-free, which is exactly the normalization f'(0) > 0
    std::vector<cpx> c(n / 2, cpx(0.0));
    c[0] = G[0].real();
    for (int k = 1; k < n / 2; ++k) c[k] = G[k];
    const std::vector<cpx> a = series_exp(c);
    R.f.assign(1, cpx(0.0));
    R.f.insert(R.f.end(), a.begin(), a.end());
    return R;
}

// Solve poly(a, z_j) = w_j for each j, in place; returns worst residual.
double newton_invert(const std::vector<cpx>& a, const std::vector<cpx>& w,
                     std::vector<cpx>& z, double tol = 1e-14, int maxit = 60)
{
    const std::vector<cpx> da = poly_derivative(a);
    double worst = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        cpx zz = z[j];
        double res = 1e300;
        for (int it = 0; it < maxit; ++it) {
            const cpx F = poly_eval(a, zz) - w[j];
            res = std::abs(F);
            if (res < tol) break;
            zz -= F / poly_eval(da, zz);
        }
        z[j] = zz;
        worst = std::max(worst, res);
    }
    return worst;
}

struct KoebeResult {
    double tau = 0.0, rho = 0.0, spread = 0.0;
    std::vector<cpx> X1, X2;  // final positions of the material samples
};

// Alternating circularization. X1, X2 carry the original boundary samples
// through every half-step; on exit X2 sits exactly on the unit circle and
// X1 on a near-circle of radius rho = e^{-2 pi tau}.
KoebeResult koebe(std::vector<cpx> X1, std::vector<cpx> X2,
                  double tol = 1e-13, int maxcyc = 400)
{
    const int n = static_cast<int>(X1.size());
    double spread = 1e300;
    for (int cyc = 0; cyc < maxcyc; ++cyc) {
        {
            // round the gamma1 image from outside: e(z) = 1/F^{-1}(1/z)
            // with F the interior map of the inverted curve
            std::vector<cpx> inv1(n);
            for (int j = 0; j < n; ++j) inv1[j] = 1.0 / X1[j];
            const TrigCurve C(inv1);
            const TheoResult T = theodorsen(C, n);
            const PeriodicMonotone pm(T.phi);
            std::vector<cpx> w(n), zeta(n);
            for (int j = 0; j < n; ++j) w[j] = 1.0 / X2[j];
            for (int j = 0; j < n; ++j) zeta[j] = w[j] / T.f[1];
            if (newton_invert(T.f, w, zeta) > 1e-8)
                throw convergence_error("alternating map: series inversion stalled");
            for (int j = 0; j < n; ++j) X2[j] = 1.0 / zeta[j];
            for (int j = 0; j < n; ++j)
                X1[j] = std::polar(1.0, -pm.inverse(std::arg(inv1[j])));
        }
        {
            // round the gamma2 image from inside
            const TrigCurve C(X2);
            const TheoResult T = theodorsen(C, n);
            const PeriodicMonotone pm(T.phi);
            std::vector<cpx> zeta(n);
            for (int j = 0; j < n; ++j) zeta[j] = X1[j] / T.f[1];
            if (newton_invert(T.f, X1, zeta) > 1e-8)
                throw convergence_error("alternating map: series inversion stalled");
            X1 = std::move(zeta);
            for (int j = 0; j < n; ++j)
                X2[j] = std::polar(1.0, pm.inverse(std::arg(X2[j])));
        }
        double lo = 1e300, hi = -1e300;
        for (const cpx& z : X1) {
            const double lr = std::log(std::abs(z));
            lo = std::min(lo, lr);
            hi = std::max(hi, lr);
        }
        spread = hi - lo;
        if (spread < tol) break;
    }
    if (!(spread < 1e-11))
        throw convergence_error("alternating circularization did not converge");

    double mean_log = 0.0;
    for (const cpx& z : X1) mean_log += std::log(std::abs(z));
    mean_log /= n;

    KoebeResult R;
    R.rho = std::exp(mean_log);
    R.tau = -mean_log / (2.0 * pi);
    R.spread = spread;
    R.X1 = std::move(X1);
    R.X2 = std::move(X2);
    return R;
}

std::vector<double> unwrap_args(const std::vector<cpx>& z)
{
    std::vector<double> a(z.size());
    a[0] = std::arg(z[0]);
    for (std::size_t j = 1; j < z.size(); ++j)
        a[j] = a[j - 1] + wrap_angle(std::arg(z[j]) - std::arg(z[j - 1]));
    return a;
}

// Laurent coefficients of the annulus map from the two tracked boundary
// correspondences: outer FFT bins k >= 0 give the z^k part exactly, inner
// FFT bins k = -m give the (z/rho)^{-m} part exactly.
LaurentSeries annulus_series(const Loop& g1, const Loop& g2,
                             const KoebeResult& K)
{
    const int n = static_cast<int>(K.X1.size());
    const PeriodicMonotone pm1(unwrap_args(K.X1));
    const PeriodicMonotone pm2(unwrap_args(K.X2));
    std::vector<cpx> F1(n), F2(n);
    for (int j = 0; j < n; ++j) {
        const double s = 2.0 * pi * j / n;
        F1[j] = g1.point(pm1.inverse(s));
        F2[j] = g2.point(pm2.inverse(s));
    }
    const std::vector<cpx> A1 = fourier_coeffs(F1);
    const std::vector<cpx> A2 = fourier_coeffs(F2);
    const int nk = n / 2 - 1;
    LaurentSeries L;
    L.rho = K.rho;
    L.pos.assign(nk + 1, cpx(0.0));
    for (int k = 0; k <= nk; ++k) L.pos[k] = A2[k];
    L.neg.assign(nk, cpx(0.0));
    for (int m = 1; m <= nk; ++m) L.neg[m - 1] = A1[n - m];
    return L;
}

// Rotation a of the annulus variable with arg[e^{ia} f_A'(rho e^{ia})] = 0,
// so serialized coefficients are reproducible across runs.
double gauge_angle(const LaurentSeries& L)
{
    auto h = [&](double a) {
        return std::arg(std::polar(1.0, a) * L.deriv(std::polar(L.rho, a)));
    };
    const int m = 512;
    double best_a = 0.0, best = 1e300;
    for (int j = 0; j < m; ++j) {
        const double a = 2.0 * pi * j / m - pi;
        const double v = std::abs(h(a));
        if (v < best) { best = v; best_a = a; }
    }
    double lo = best_a - 2.0 * pi / m, hi = best_a + 2.0 * pi / m;
    if (!(h(lo) < 0.0 && h(hi) > 0.0)) return best_a;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

void rotate_gauge(LaurentSeries& L, double a)
{
    for (std::size_t k = 0; k < L.pos.size(); ++k) L.pos[k] *= std::polar(1.0, double(k) * a);
    for (std::size_t j = 0; j < L.neg.size(); ++j) L.neg[j] *= std::polar(1.0, -double(j + 1) * a);
}

// E(w) with f(z) = z E(1/z) = 1/F(1/z), F the interior series of the
// inverted curve: E = 1/(F(w)/w), E(0) = 1/F'(0) > 0.
std::vector<cpx> exterior_series(const TheoResult& T)
{
    std::vector<cpx> tt(T.f.begin() + 1, T.f.end());
    std::vector<cpx> L = series_log(tt);
    for (cpx& v : L) v = -v;
    return series_exp(L);
}

double sup_distance(const Loop& g, const std::vector<cpx>& pts)
{
    double r = 0.0;
    for (double d : curve_distances(g, pts)) r = std::max(r, d);
    return r;
}

Uniformization assemble(const Loop& g1, const Loop& g2, int n)
{
    const KoebeResult K = koebe(g1.sample(n), g2.sample(n));

    Uniformization u;
    u.tau = K.tau;

    u.fA.kind = MapKind::annulus;
    u.fA.domain_radius = K.rho;
    u.fA.laurent = annulus_series(g1, g2, K);
    rotate_gauge(u.fA.laurent, gauge_angle(u.fA.laurent));

    const TheoResult T1 = theodorsen(TrigCurve(g1.sample(n)), n);
    u.f1.kind = MapKind::interior_disk;
    u.f1.domain_radius = K.rho;
    u.f1.coeffs = T1.f;

    std::vector<cpx> inv2 = g2.sample(n);
    for (cpx& z : inv2) z = 1.0 / z;
    const TheoResult T2 = theodorsen(TrigCurve(inv2), n);
    u.f2.kind = MapKind::exterior_disk;
    u.f2.domain_radius = 1.0;
    u.f2.coeffs = exterior_series(T2);

    const int nb = 2 * n;
    std::vector<cpx> b1(nb), bAi(nb), bAo(nb), b2(nb);
    for (int j = 0; j < nb; ++j) {
        const double th = 2.0 * pi * j / nb;
        b1[j] = u.f1.eval(std::polar(K.rho, th));
        bAi[j] = u.fA.eval(std::polar(K.rho, th));
        bAo[j] = u.fA.eval(std::polar(1.0, th));
        b2[j] = u.f2.eval(std::polar(1.0, th));
    }
    u.boundary_residual = std::max(
        std::max(sup_distance(g1, b1), sup_distance(g1, bAi)),
        std::max(sup_distance(g2, bAo), sup_distance(g2, b2)));

    // conformality sanity on an interior grid of the annulus
    for (int i = 0; i < 8; ++i) {
        const double r = K.rho + (1.0 - K.rho) * (i + 0.5) / 8.0;
        for (int j = 0; j < 64; ++j) {
            const cpx d = u.fA.deriv(std::polar(r, 2.0 * pi * j / 64.0));
            if (!(std::abs(d) > 1e-12))
                throw convergence_error("annulus map derivative vanishes on interior grid");
        }
    }
    return u;
}

}  // namespace

cpx ConformalMapSeries::eval(cpx z) const
{
    switch (kind) {
        case MapKind::interior_disk: {
            const cpx u = z / domain_radius;
            cpx s = 0.0;
            for (std::size_t i = coeffs.size(); i-- > 0;) s = s * u + coeffs[i];
            return s;
        }
        case MapKind::exterior_disk: {
            const cpx w = 1.0 / z;
            cpx e = 0.0;
            for (std::size_t i = coeffs.size(); i-- > 0;) e = e * w + coeffs[i];
            return z * e;
        }
        case MapKind::annulus: return laurent.eval(z);
    }
    return {};
}

cpx ConformalMapSeries::deriv(cpx z) const
{
    switch (kind) {
        case MapKind::interior_disk: {
            const cpx u = z / domain_radius;
            cpx s = 0.0;
            for (std::size_t i = coeffs.size(); i-- > 1;) s = s * u + double(i) * coeffs[i];
            return s / domain_radius;
        }
        case MapKind::exterior_disk: {
            const cpx w = 1.0 / z;
            cpx e = 0.0, ep = 0.0;
            for (std::size_t i = coeffs.size(); i-- > 1;) ep = ep * w + double(i) * coeffs[i];
            for (std::size_t i = coeffs.size(); i-- > 0;) e = e * w + coeffs[i];
            return e - w * ep;
        }
        case MapKind::annulus: return laurent.deriv(z);
    }
    return {};
}

cpx ConformalMapSeries::deriv2(cpx z) const
{
    switch (kind) {
        case MapKind::interior_disk: {
            const cpx u = z / domain_radius;
            cpx s = 0.0;
            for (std::size_t i = coeffs.size(); i-- > 2;)
                s = s * u + double(i) * double(i - 1) * coeffs[i];
            return s / (domain_radius * domain_radius);
        }
        case MapKind::exterior_disk: {
            const cpx w = 1.0 / z;
            cpx epp = 0.0;
            for (std::size_t i = coeffs.size(); i-- > 2;)
                epp = epp * w + double(i) * double(i - 1) * coeffs[i];
            return w * w * w * epp;
        }
        case MapKind::annulus: return laurent.deriv2(z);
    }
    return {};
}

cpx ConformalMapSeries::deriv3(cpx z) const
{
    switch (kind) {
        case MapKind::interior_disk: {
            const cpx u = z / domain_radius;
            cpx s = 0.0;
            for (std::size_t i = coeffs.size(); i-- > 3;)
                s = s * u + double(i) * double(i - 1) * double(i - 2) * coeffs[i];
            return s / (domain_radius * domain_radius * domain_radius);
        }
        case MapKind::exterior_disk: {
            const cpx w = 1.0 / z;
            cpx epp = 0.0, eppp = 0.0;
            for (std::size_t i = coeffs.size(); i-- > 2;)
                epp = epp * w + double(i) * double(i - 1) * coeffs[i];
            for (std::size_t i = coeffs.size(); i-- > 3;)
                eppp = eppp * w + double(i) * double(i - 1) * double(i - 2) * coeffs[i];
            const cpx w4 = w * w * w * w;
            return -3.0 * w4 * epp - w4 * w * eppp;
        }
        case MapKind::annulus: {
            cpx s = 0.0;
            for (std::size_t i = laurent.pos.size(); i-- > 3;)
                s = s * z + double(i) * double(i - 1) * double(i - 2) * laurent.pos[i];
            cpx sn = 0.0;
            const cpx q = laurent.rho / z;
            cpx p = q;
            for (std::size_t j = 0; j < laurent.neg.size(); ++j) {
                const double m = double(j + 1);
                sn += laurent.neg[j] * (-m) * (m + 1.0) * (m + 2.0) * p;
                p *= q;
            }
            return s + sn / (z * z * z);
        }
    }
    return {};
}

ConformalMapSeries disk_map(const Loop& loop, MapSide side, double tol, int max_n)
{
    const int n0 = std::max(256, pow2_at_least(8 * (loop.degree() + 1)));
    double last_res = 1e300;
    for (int n = n0; n / 2 <= max_n; n *= 2) {
        std::vector<cpx> s = loop.sample(n);

        ConformalMapSeries f;
        if (side == MapSide::interior) {
            if (winding_number(s, cpx(0.0)) != 1)
                throw validation_error("disk_map: 0 must be strictly inside the loop");
            const TheoResult T = theodorsen(TrigCurve(s), n);
            f.kind = MapKind::interior_disk;
            f.domain_radius = 1.0;
            f.coeffs = T.f;
        } else {
            for (const cpx& z : s)
                if (!(std::abs(z) > 1e-9))
                    throw validation_error("disk_map: loop passes through 0");
            for (cpx& z : s) z = 1.0 / z;
            const TheoResult T = theodorsen(TrigCurve(s), n);
            f.kind = MapKind::exterior_disk;
            f.domain_radius = 1.0;
            f.coeffs = exterior_series(T);
        }

        const int nb = std::max(2 * n, 256);
        std::vector<cpx> img(nb);
        for (int j = 0; j < nb; ++j)
            img[j] = f.eval(std::polar(1.0, 2.0 * pi * j / nb));
        last_res = sup_distance(loop, img);
        if (last_res < tol) return f;
    }
    throw convergence_error("disk_map: boundary residual " + std::to_string(last_res)
                            + " above tolerance at maximum truncation");
}

Uniformization annulus_uniformize(const TwoLoopConfig& cfg, double tol, int max_n)
{
    const Loop& g1 = cfg.gamma1();
    const Loop& g2 = cfg.gamma2();
    const int n0 = std::max(256, pow2_at_least(8 * (std::max(g1.degree(), g2.degree()) + 1)));
    double last_res = 1e300;
    for (int n = n0; n / 2 <= max_n; n *= 2) {
        Uniformization u = assemble(g1, g2, n);
        last_res = u.boundary_residual;
        if (last_res < tol) return u;
    }
    throw convergence_error("annulus uniformization: boundary residual "
                            + std::to_string(last_res)
                            + " above tolerance at maximum truncation");
}

double log_deriv_ratio(const Uniformization& u)
{
    if (u.f1.coeffs.size() < 2 || u.f2.coeffs.empty())
        throw validation_error("log_deriv_ratio: incomplete uniformization");
    const double d1 = std::abs(u.f1.coeffs[1]) / u.f1.domain_radius;
    const double d2 = std::abs(u.f2.coeffs[0]);
    if (!(d1 > 0.0) || !(d2 > 0.0))
        throw nonfinite_error("log_deriv_ratio: degenerate map derivative");
    return std::log(d2) - std::log(d1);
}

}
