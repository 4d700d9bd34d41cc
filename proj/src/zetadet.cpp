#include "loewner/zetadet.hpp"

#include <cmath>
#include <string>

#include "loewner/errors.hpp"
#include "loewner/quadrature.hpp"
#include "loewner/specfun.hpp"

namespace loewner {

namespace {

const double pi = 3.14159265358979323846;

// Collocation derivative on arbitrary distinct nodes via barycentric
// weights; row i gives d/dr of the interpolating polynomial at rnodes[i].
std::vector<double> diff_matrix(const std::vector<double>& x)
{
    const int n = static_cast<int>(x.size());
    std::vector<double> w(n, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (j != i) w[i] *= x[i] - x[j];
    for (auto& v : w) v = 1.0 / v;
    std::vector<double> D(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        double diag = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            D[i * n + j] = (w[j] / w[i]) / (x[i] - x[j]);
            diag -= D[i * n + j];
        }
        D[i * n + i] = diag;
    }
    return D;
}

void check_field(const ConformalFactorField& f)
{
    if (f.nr < 8 || f.nth < 8)
        throw validation_error("conformal factor field: grid sizes must be >= 8");
    if (f.nr > 200)
        throw validation_error("conformal factor field: radial grid too large for collocation");
    if (static_cast<int>(f.sigma.size()) != f.nr * f.nth ||
        static_cast<int>(f.rnodes.size()) != f.nr ||
        static_cast<int>(f.sig_outer.size()) != f.nth ||
        static_cast<int>(f.dn_outer.size()) != f.nth)
        throw validation_error("conformal factor field: inconsistent array sizes");
    const bool annular = f.r_inner > 0.0;
    if (annular && (static_cast<int>(f.sig_inner.size()) != f.nth ||
                    static_cast<int>(f.dn_inner.size()) != f.nth))
        throw validation_error("conformal factor field: missing inner boundary data");
}

ConformalFactorField build_field(double r0, double r1, int nr, int nth,
                                 const std::function<double(cpx)>& sigma,
                                 const std::function<cpx(cpx)>& grad)
{
    if (nr < 8 || nth < 8)
        throw validation_error("sample_field: grid sizes must be >= 8");
    ConformalFactorField f;
    f.nr = nr;
    f.nth = nth;
    f.r_inner = r0;
    f.r_outer = r1;
    gauss_legendre(nr, r0, r1, f.rnodes, f.rweights);
    f.sigma.resize(static_cast<std::size_t>(nr) * nth);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nth; ++j) {
            const double th = 2.0 * pi * j / nth;
            f.sigma[i * nth + j] = sigma(std::polar(f.rnodes[i], th));
        }
    f.sig_outer.resize(nth);
    f.dn_outer.resize(nth);
    if (r0 > 0.0) {
        f.sig_inner.resize(nth);
        f.dn_inner.resize(nth);
    }
    for (int j = 0; j < nth; ++j) {
        const double th = 2.0 * pi * j / nth;
        const cpx n_hat = std::polar(1.0, th);
        const cpx zo = r1 * n_hat;
        f.sig_outer[j] = sigma(zo);
        f.dn_outer[j] = (std::conj(grad(zo)) * n_hat).real();
        if (r0 > 0.0) {
            const cpx zi = r0 * n_hat;
            f.sig_inner[j] = sigma(zi);
            // outward normal of the annulus points toward the center here
            f.dn_inner[j] = (std::conj(grad(zi)) * (-n_hat)).real();
        }
    }
    return f;
}

}  // namespace

ConformalFactorField sample_field(const FlatDisk& d, int nr, int nth,
                                  const std::function<double(cpx)>& sigma,
                                  const std::function<cpx(cpx)>& grad)
{
    if (!(d.r > 0.0)) throw validation_error("sample_field: disk radius must be positive");
    return build_field(0.0, d.r, nr, nth, sigma, grad);
}

ConformalFactorField sample_field(const FlatAnnulus& a, int nr, int nth,
                                  const std::function<double(cpx)>& sigma,
                                  const std::function<cpx(cpx)>& grad)
{
    if (!(a.r1 > 0.0 && a.r1 < a.r2))
        throw validation_error("sample_field: annulus radii must satisfy 0 < r1 < r2");
    return build_field(a.r1, a.r2, nr, nth, sigma, grad);
}

double det_disk(const FlatDisk& d)
{
    if (!(d.r > 0.0)) throw validation_error("det_disk: radius must be positive");
    return -std::log(2.0) / 6.0 - 0.5 * std::log(pi) - std::log(d.r) / 3.0
           - 2.0 * zeta_prime_minus_one() - 5.0 / 12.0;
}

double det_annulus(const FlatAnnulus& a)
{
    if (!(a.r1 > 0.0 && a.r1 < a.r2))
        throw validation_error("det_annulus: radii must satisfy 0 < r1 < r2");
    const double lr = std::log(a.r2) - std::log(a.r1);
    const double q = (a.r1 / a.r2) * (a.r1 / a.r2);
    return -std::log(pi) - lr / 3.0 + std::log(lr) + 2.0 * log_euler_phi(q);
}

double dirichlet_energy(const ConformalFactorField& f)
{
    check_field(f);
    const int nr = f.nr, nth = f.nth;
    const std::vector<double> D = diff_matrix(f.rnodes);

    // sigma_r at every grid point through the radial collocation matrix
    std::vector<double> sr(static_cast<std::size_t>(nr) * nth, 0.0);
    for (int i = 0; i < nr; ++i)
        for (int m = 0; m < nr; ++m) {
            const double dmi = D[i * nr + m];
            if (dmi == 0.0) continue;
            for (int j = 0; j < nth; ++j) sr[i * nth + j] += dmi * f.sigma[m * nth + j];
        }

    double total = 0.0;
    std::vector<cpx> ring(nth);
    double worst_tail = 0.0;
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < nth; ++j) ring[j] = f.sigma[i * nth + j];
        fft(ring, -1);
        // aliasing estimate: relative size of the top-quarter spectrum
        double peak = 0.0, tail = 0.0;
        for (int j = 0; j < nth; ++j) {
            const int freq = j <= nth / 2 ? j : j - nth;
            const double m = std::abs(ring[j]);
            peak = std::max(peak, m);
            if (std::abs(freq) > 3 * nth / 8) tail = std::max(tail, m);
        }
        if (peak > 0.0) worst_tail = std::max(worst_tail, tail / peak);
        for (int j = 0; j < nth; ++j) {
            const int freq = j <= nth / 2 ? j : j - nth;
            ring[j] *= cpx(0.0, freq == nth / 2 ? 0.0 : double(freq));
        }
        fft(ring, +1);
        const double r = f.rnodes[i];
        double ring_sum = 0.0;
        for (int j = 0; j < nth; ++j) {
            const double st = ring[j].real() / nth;
            const double s_r = sr[i * nth + j];
            ring_sum += s_r * s_r + (st * st) / (r * r);
        }
        total += 0.5 * f.rweights[i] * r * ring_sum * (2.0 * pi / nth);
    }
    if (worst_tail > 1e-4)
        throw convergence_error(
            "dirichlet_energy: angular grid too coarse, spectral tail " +
            std::to_string(worst_tail));
    return total;
}

double boundary_curvature_integral(const ConformalFactorField& f)
{
    check_field(f);
    const double dth = 2.0 * pi / f.nth;
    double s = 0.0;
    for (double v : f.sig_outer) s += v;  // k ds = (1/r)(r dth) = dth
    double t = 0.0;
    for (double v : f.sig_inner) t += v;  // k ds = (-1/r)(r dth) = -dth
    return dth * (s - t);
}

double boundary_normal_integral(const ConformalFactorField& f)
{
    check_field(f);
    const double dth = 2.0 * pi / f.nth;
    double s = 0.0;
    for (double v : f.dn_outer) s += v;
    s *= f.r_outer;
    double t = 0.0;
    for (double v : f.dn_inner) t += v;
    t *= f.r_inner;
    return dth * (s + t);
}

namespace {

double pa_core(const ConformalFactorField& f)
{
    const double e = dirichlet_energy(f);
    const double bk = boundary_curvature_integral(f);
    const double bn = boundary_normal_integral(f);
    const double v = -(e + bk + 1.5 * bn) / (6.0 * pi);
    if (!std::isfinite(v)) throw nonfinite_error("polyakov_alvarez: non-finite result");
    return v;
}

double anomaly_core(const ConformalFactorField& f)
{
    const double v = (dirichlet_energy(f) + boundary_curvature_integral(f)) / (12.0 * pi);
    if (!std::isfinite(v)) throw nonfinite_error("conformal_anomaly: non-finite result");
    return v;
}

void match_geometry(const ConformalFactorField& f, double r0, double r1)
{
    if (std::abs(f.r_inner - r0) > 1e-12 * (1.0 + r0) ||
        std::abs(f.r_outer - r1) > 1e-12 * (1.0 + r1))
        throw validation_error("field geometry does not match the stated domain");
}

}  // namespace

double polyakov_alvarez(const ConformalFactorField& f, const FlatDisk& d)
{
    match_geometry(f, 0.0, d.r);
    return pa_core(f);
}

double polyakov_alvarez(const ConformalFactorField& f, const FlatAnnulus& a)
{
    match_geometry(f, a.r1, a.r2);
    return pa_core(f);
}

double conformal_anomaly(const ConformalFactorField& f, const FlatDisk& d)
{
    match_geometry(f, 0.0, d.r);
    return anomaly_core(f);
}

double conformal_anomaly(const ConformalFactorField& f, const FlatAnnulus& a)
{
    match_geometry(f, a.r1, a.r2);
    return anomaly_core(f);
}

}
