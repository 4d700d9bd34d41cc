#include "loewner/loops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "loewner/errors.hpp"
#include "loewner/uniformize.hpp"

namespace loewner {

namespace {

const double pi = 3.14159265358979323846;

// Horner evaluation of sum_{j=0}^{2M} a_j w^j at w = e^{i theta}, then
// shifted down by w^{-M} = conj(w)^M since |w| = 1.
cpx eval_shifted(const std::vector<cpx>& a, double theta)
{
    const cpx w = std::polar(1.0, theta);
    cpx s = 0.0;
    for (std::size_t i = a.size(); i-- > 0;) s = s * w + a[i];
    const int M = (static_cast<int>(a.size()) - 1) / 2;
    return s * std::pow(std::conj(w), M);
}

double wrap_angle(double x) { return std::remainder(x, 2.0 * pi); }

double orient(cpx a, cpx b, cpx c)
{
    return (b.real() - a.real()) * (c.imag() - a.imag())
         - (b.imag() - a.imag()) * (c.real() - a.real());
}

bool seg_intersect(cpx a, cpx b, cpx c, cpx d)
{
    const double o1 = orient(a, b, c), o2 = orient(a, b, d);
    const double o3 = orient(c, d, a), o4 = orient(c, d, b);
    return ((o1 > 0.0) != (o2 > 0.0)) && ((o3 > 0.0) != (o4 > 0.0));
}

bool polyline_simple(const std::vector<cpx>& s)
{
    const int n = static_cast<int>(s.size());
    for (int j = 0; j < n; ++j) {
        const cpx a = s[j], b = s[(j + 1) % n];
        for (int k = j + 2; k < n; ++k) {
            if (j == 0 && k == n - 1) continue;  // adjacent around the seam
            if (seg_intersect(a, b, s[k], s[(k + 1) % n])) return false;
        }
    }
    return true;
}

bool tangent_winding_is_one(const Loop& g, int n)
{
    double total = 0.0;
    double prev = std::arg(g.tangent(0.0));
    for (int j = 1; j <= n; ++j) {
        const double cur = std::arg(g.tangent(2.0 * pi * j / n));
        total += wrap_angle(cur - prev);
        prev = cur;
    }
    return std::abs(total - 2.0 * pi) < 0.5;
}

double fit_decay_rate(const Loop& g)
{
    double top = 0.0;
    for (const auto& c : g.coeffs()) top = std::max(top, std::abs(c));
    if (top == 0.0) return 0.0;
    // log-linear regression of |c_k| against |k|
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int k = -g.degree(); k <= g.degree(); ++k) {
        if (k == 0) continue;
        const double m = std::abs(g.coeff(k));
        if (m < 1e-15 * top) continue;
        const double x = std::abs(static_cast<double>(k)), y = std::log(m);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++cnt;
    }
    if (cnt < 3) return 0.0;
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    return std::exp(slope);
}

}  // namespace

Loop::Loop(std::vector<cpx> coeffs)
{
    if (coeffs.empty() || coeffs.size() % 2 == 0)
        throw validation_error("loop: coefficient count must be odd (2M+1)");
    M_ = (static_cast<int>(coeffs.size()) - 1) / 2;
    if (M_ > 256) throw validation_error("loop: trigonometric degree exceeds 256");
    c_ = std::move(coeffs);
}

Loop Loop::circle(cpx center, double radius)
{
    if (!(radius > 0.0)) throw validation_error("loop: circle radius must be positive");
    return Loop({cpx(0.0), center, cpx(radius)});
}

Loop Loop::fit(const std::vector<cpx>& samples, int degree)
{
    const int n = static_cast<int>(samples.size());
    if (degree < 1 || n < 2 * degree + 1)
        throw validation_error("loop fit: need at least 2*degree+1 samples");
    const std::vector<cpx> hat = fourier_coeffs(samples);
    std::vector<cpx> c(2 * degree + 1);
    for (int k = -degree; k <= degree; ++k) c[degree + k] = hat[(k + n) % n];
    return Loop(std::move(c));
}

cpx Loop::coeff(int k) const
{
    if (std::abs(k) > M_) return 0.0;
    return c_[M_ + k];
}

cpx Loop::point(double theta) const { return eval_shifted(c_, theta); }

cpx Loop::tangent(double theta) const
{
    std::vector<cpx> d(c_.size());
    for (int j = 0; j < static_cast<int>(c_.size()); ++j)
        d[j] = cpx(0.0, double(j - M_)) * c_[j];
    return eval_shifted(d, theta);
}

std::vector<cpx> Loop::sample(int n) const
{
    if (n < 2 * M_ + 1) {
        std::vector<cpx> out(n);
        for (int j = 0; j < n; ++j) out[j] = point(2.0 * pi * j / n);
        return out;
    }
    std::vector<cpx> freq(n, cpx(0.0));
    for (int k = -M_; k <= M_; ++k) freq[(k + n) % n] = c_[M_ + k];
    return fourier_samples(std::move(freq));
}

double Loop::speed_bound() const
{
    double s = 0.0;
    for (int k = -M_; k <= M_; ++k) s += std::abs(k) * std::abs(c_[M_ + k]);
    return s;
}

MoebiusMap MoebiusMap::normalized(cpx a, cpx b, cpx c, cpx d)
{
    const cpx det = a * d - b * c;
    if (std::abs(det) < 1e-300) throw validation_error("moebius map: zero determinant");
    const cpx s = std::sqrt(det);
    return {a / s, b / s, c / s, d / s};
}

cpx MoebiusMap::operator()(cpx z) const { return (a * z + b) / (c * z + d); }

int winding_number(const std::vector<cpx>& samples, cpx p)
{
    double total = 0.0;
    const int n = static_cast<int>(samples.size());
    double prev = std::arg(samples[0] - p);
    for (int j = 1; j <= n; ++j) {
        const double cur = std::arg(samples[j % n] - p);
        total += wrap_angle(cur - prev);
        prev = cur;
    }
    return static_cast<int>(std::lround(total / (2.0 * pi)));
}

std::vector<double> curve_distances(const Loop& loop, const std::vector<cpx>& pts)
{
    const int n = std::max(64, 8 * loop.degree());
    const std::vector<cpx> s = loop.sample(n);
    const int M = loop.degree();
    std::vector<cpx> acc(2 * M + 1);
    for (int j = 0; j <= 2 * M; ++j)
        acc[j] = -double(j - M) * double(j - M) * loop.coeffs()[j];

    std::vector<double> out(pts.size());
    for (std::size_t q = 0; q < pts.size(); ++q) {
        const cpx p = pts[q];
        int best = 0;
        double bd = std::abs(s[0] - p);
        for (int j = 1; j < n; ++j) {
            const double d = std::abs(s[j] - p);
            if (d < bd) { bd = d; best = j; }
        }
        // Newton on d/dt |gamma(t) - p|^2
        double t = 2.0 * pi * best / n;
        for (int it = 0; it < 8; ++it) {
            const cpx g = loop.point(t) - p;
            const cpx gp = loop.tangent(t);
            const cpx gpp = eval_shifted(acc, t);
            const double d1 = 2.0 * (g * std::conj(gp)).real();
            const double d2 = 2.0 * (std::norm(gp) + (g * std::conj(gpp)).real());
            if (d2 <= 0.0) break;
            const double step = d1 / d2;
            t -= step;
            if (std::abs(step) < 1e-14) break;
        }
        out[q] = std::min(bd, std::abs(loop.point(t) - p));
    }
    return out;
}

double curve_distance(const Loop& loop, cpx p)
{
    return curve_distances(loop, {p})[0];
}

ValidationReport validate(const Loop& g1, const Loop& g2)
{
    ValidationReport r;
    const int n1 = std::max(64, 8 * g1.degree());
    const int n2 = std::max(64, 8 * g2.degree());
    const std::vector<cpx> s1 = g1.sample(n1);
    const std::vector<cpx> s2 = g2.sample(n2);

    r.simple1 = polyline_simple(s1);
    r.simple2 = polyline_simple(s2);
    r.winding1 = tangent_winding_is_one(g1, n1);
    r.winding2 = tangent_winding_is_one(g2, n2);

    r.min_speed1 = 1e300;
    for (int j = 0; j < n1; ++j)
        r.min_speed1 = std::min(r.min_speed1, std::abs(g1.tangent(2.0 * pi * j / n1)));
    r.min_speed2 = 1e300;
    for (int j = 0; j < n2; ++j)
        r.min_speed2 = std::min(r.min_speed2, std::abs(g2.tangent(2.0 * pi * j / n2)));

    // between samples the curves wander at most speed * h / 2 away; if
    // that tube is too wide to certify a positive gap, refine
    {
        int m1 = n1, m2 = n2;
        for (;;) {
            const std::vector<cpx> t1 = (m1 == n1) ? s1 : g1.sample(m1);
            const std::vector<cpx> t2 = (m2 == n2) ? s2 : g2.sample(m2);
            double md = 1e300;
            for (const cpx& a : t1)
                for (const cpx& b : t2) md = std::min(md, std::abs(a - b));
            const double tube = 0.5 * (g1.speed_bound() * 2.0 * pi / m1
                                     + g2.speed_bound() * 2.0 * pi / m2);
            r.disjointness_margin = md;
            r.disjoint = md - tube > 0.0;
            if (r.disjoint || m1 >= 8192) break;
            m1 *= 2;
            m2 *= 2;
        }
    }

    r.zero_in_d1 = winding_number(s1, cpx(0.0)) == 1;
    r.nested = winding_number(s2, s1[0]) == 1 && winding_number(s1, s2[0]) == 0;

    r.decay_rate1 = fit_decay_rate(g1);
    r.decay_rate2 = fit_decay_rate(g2);

    r.passed = r.simple1 && r.simple2 && r.winding1 && r.winding2
            && r.min_speed1 > 0.0 && r.min_speed2 > 0.0
            && r.disjoint && r.zero_in_d1 && r.nested;
    return r;
}

ValidationReport validate(const TwoLoopConfig& cfg) { return cfg.report(); }

TwoLoopConfig::TwoLoopConfig(Loop g1, Loop g2) : g1_(std::move(g1)), g2_(std::move(g2))
{
    report_ = validate(g1_, g2_);
    if (!report_.zero_in_d1) {
        // restore standard position with a single translation to an
        // interior point of the bounded side of gamma1
        const cpx z0 = g1_.coeff(0);
        if (winding_number(g1_.sample(std::max(64, 8 * g1_.degree())), z0) == 1) {
            std::vector<cpx> c1 = g1_.coeffs(), c2 = g2_.coeffs();
            c1[g1_.degree()] -= z0;
            c2[g2_.degree()] -= z0;
            g1_ = Loop(std::move(c1));
            g2_ = Loop(std::move(c2));
            report_ = validate(g1_, g2_);
        }
    }
    if (!report_.passed) {
        std::string why = "two-loop configuration rejected:";
        if (!report_.simple1 || !report_.simple2) why += " self-intersection;";
        if (!report_.winding1 || !report_.winding2) why += " tangent winding != 1;";
        if (!report_.disjoint) why += " loops not certifiably disjoint;";
        if (!report_.zero_in_d1) why += " 0 not enclosed by gamma1;";
        if (!report_.nested) why += " gamma1 not inside gamma2;";
        if (!(report_.min_speed1 > 0.0) || !(report_.min_speed2 > 0.0))
            why += " vanishing parametric speed;";
        throw validation_error(why);
    }
}

TwoLoopConfig::~TwoLoopConfig() = default;
TwoLoopConfig::TwoLoopConfig(const TwoLoopConfig&) = default;
TwoLoopConfig& TwoLoopConfig::operator=(const TwoLoopConfig&) = default;
TwoLoopConfig::TwoLoopConfig(TwoLoopConfig&&) noexcept = default;
TwoLoopConfig& TwoLoopConfig::operator=(TwoLoopConfig&&) noexcept = default;

const Uniformization& TwoLoopConfig::uniformization(double tol, int max_n) const
{
    if (!cache_)
        cache_ = std::make_shared<const Uniformization>(annulus_uniformize(*this, tol, max_n));
    return *cache_;
}

TwoLoopConfig make_circle_pair(double tau)
{
    if (!(tau > 0.0)) throw validation_error("make_circle_pair: tau must be positive");
    const double rho = std::exp(-2.0 * pi * tau);
    TwoLoopConfig cfg(Loop::circle(0.0, rho), Loop::circle(0.0, 1.0));

    auto u = std::make_shared<Uniformization>();
    u->tau = tau;
    u->f1.kind = MapKind::interior_disk;
    u->f1.domain_radius = rho;
    u->f1.coeffs = {cpx(0.0), cpx(rho)};
    u->fA.kind = MapKind::annulus;
    u->fA.domain_radius = rho;
    u->fA.laurent.pos = {cpx(0.0), cpx(1.0)};
    u->fA.laurent.rho = rho;
    u->f2.kind = MapKind::exterior_disk;
    u->f2.coeffs = {cpx(1.0)};
    u->boundary_residual = 0.0;
    cfg.cache_ = std::move(u);
    return cfg;
}

TwoLoopConfig apply_moebius(const MoebiusMap& m, const TwoLoopConfig& cfg)
{
    const Loop& g1 = cfg.gamma1();
    const Loop& g2 = cfg.gamma2();
    const int n = std::max(2048, 16 * std::max(g1.degree(), g2.degree()));

    if (std::abs(m.c) > 0.0) {
        const cpx pole = -m.d / m.c;
        const std::vector<cpx> s2 = g2.sample(std::max(64, 8 * g2.degree()));
        double dmin = 1e300;
        for (const cpx& q : s2) dmin = std::min(dmin, std::abs(q - pole));
        if (dmin < 1e-6 || winding_number(s2, pole) != 0)
            throw validation_error(
                "apply_moebius: pole must lie on the unbounded side of gamma2");
    }

    auto refit = [&](const Loop& g) {
        std::vector<cpx> s = g.sample(n);
        for (auto& z : s) z = m(z);
        const std::vector<cpx> hat = fourier_coeffs(s);
        double top = 0.0;
        for (const auto& c : hat) top = std::max(top, std::abs(c));
        auto tail_above = [&](int M) {
            double t = 0.0;
            for (int k = 0; k < n; ++k) {
                const int f = k <= n / 2 ? k : k - n;
                if (std::abs(f) > M) t = std::max(t, std::abs(hat[k]));
            }
            return t;
        };
        // smallest degree whose discarded tail is negligible
        int deg = 256;
        for (int M = g.degree(); M <= 256; ++M)
            if (tail_above(M) <= 1e-12 * top) { deg = M; break; }
        if (tail_above(deg) > 1e-9 * top)
            throw validation_error("apply_moebius: trigonometric fit residual too large");
        std::vector<cpx> c(2 * deg + 1);
        for (int k = -deg; k <= deg; ++k) c[deg + k] = hat[(k + n) % n];
        return Loop(std::move(c));
    };

    return TwoLoopConfig(refit(g1), refit(g2));
}

}
