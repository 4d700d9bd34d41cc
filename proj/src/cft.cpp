#include "loewner/cft.hpp"

#include <algorithm>
#include <cmath>

#include "loewner/errors.hpp"
#include "loewner/specfun.hpp"
#include "loewner/zetadet.hpp"

namespace loewner {
namespace {

constexpr double PI = 3.14159265358979323846;

void require_tau(double tau)
{
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw validation_error("modulus must be positive and finite");
}

// golden-section minimization on [a, b] assuming a single dip
double golden_min(const std::function<double(double)>& f, double a, double b, double tol)
{
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

// least-squares slope of (x, y) pairs
double ls_slope(const std::vector<std::pair<double, double>>& pts, std::size_t first,
                std::size_t last)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(last - first);
    for (std::size_t i = first; i < last; ++i) {
        sx += pts[i].first;
        sy += pts[i].second;
        sxx += pts[i].first * pts[i].first;
        sxy += pts[i].first * pts[i].second;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

Trivialization make_zeta_trivialization(double c)
{
    if (c == 0.0 || !std::isfinite(c))
        throw validation_error("central charge must be nonzero and finite");
    Trivialization t;
    t.name = "zeta";
    t.c = c;
    t.log_Z_annulus = [c](double tau) {
        require_tau(tau);
        return -0.5 * c * det_annulus(FlatAnnulus{std::exp(-2.0 * PI * tau), 1.0});
    };
    return t;
}

Trivialization make_character_trivialization(
    double c, const std::vector<std::pair<double, int>>& weights)
{
    if (!std::isfinite(c)) throw validation_error("central charge must be finite");
    if (weights.empty()) throw validation_error("character list must not be empty");
    for (const auto& [h, n] : weights) {
        if (!std::isfinite(h)) throw validation_error("character weight must be finite");
        if (n <= 0) throw validation_error("character multiplicities must be positive");
    }
    Trivialization t;
    t.name = "characters";
    t.c = c;
    t.log_Z_annulus = [c, weights](double tau) {
        require_tau(tau);
        const double q = std::exp(-PI / tau);
        // log sum n_h exp(log chi_h), stabilized by the largest exponent
        double top = -1e300;
        std::vector<double> lg(weights.size());
        for (std::size_t i = 0; i < weights.size(); ++i) {
            lg[i] = virasoro_character(CharacterParams{c, weights[i].first, q});
            top = std::max(top, lg[i]);
        }
        double s = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i)
            s += double(weights[i].second) * std::exp(lg[i] - top);
        return top + std::log(s);
    };
    return t;
}

double criterion(const Trivialization& t, double tau)
{
    require_tau(tau);
    return -(PI / 3.0) * t.c * tau + t.log_Z_annulus(tau);
}

const char* minimizer_kind_name(MinimizerKind k)
{
    switch (k) {
    case MinimizerKind::interior_minimum: return "interior-minimum";
    case MinimizerKind::infimum_at_zero: return "infimum-at-zero";
    case MinimizerKind::infimum_at_infinity: return "infimum-at-infinity";
    case MinimizerKind::monotone_no_min: return "monotone-no-min";
    }
    return "unknown";
}

CriterionResult classify_minimizer(const Trivialization& t, double tau_min, double tau_max,
                                   int grid)
{
    if (!(tau_min > 0.0) || !(tau_max > tau_min))
        throw validation_error("modulus range must satisfy 0 < tau_min < tau_max");
    if (grid < 16) throw validation_error("scan grid must have at least 16 points");

    CriterionResult out;
    out.scan.reserve(grid);
    const double lr = std::log(tau_max / tau_min);
    for (int i = 0; i < grid; ++i) {
        const double tau = tau_min * std::exp(lr * i / double(grid - 1));
        const double v = criterion(t, tau);
        if (!std::isfinite(v)) throw nonfinite_error("criterion scan produced a non-finite value");
        out.scan.emplace_back(tau, v);
    }

    // slope of the last quarter decides escape to infinity; the scan can
    // never rule it out on its own
    const std::size_t q3 = out.scan.size() - std::max<std::size_t>(4, out.scan.size() / 4);
    const double right_slope = ls_slope(out.scan, q3, out.scan.size());
    if (right_slope < -1e-4) {
        out.classification = MinimizerKind::infimum_at_infinity;
        return out;
    }

    std::size_t imin = 0;
    for (std::size_t i = 1; i < out.scan.size(); ++i)
        if (out.scan[i].second < out.scan[imin].second) imin = i;

    if (imin > 0 && imin + 1 < out.scan.size()) {
        const double a = out.scan[imin - 1].first, b = out.scan[imin + 1].first;
        const double ts =
            golden_min([&](double x) { return criterion(t, x); }, a, b, 1e-10);
        out.classification = MinimizerKind::interior_minimum;
        out.tau_star = ts;
        out.value_at_star = criterion(t, ts);
        return out;
    }

    if (imin == 0) {
        out.classification = MinimizerKind::infimum_at_zero;
        return out;
    }
    out.classification = MinimizerKind::monotone_no_min;
    return out;
}

}
