#include "loewner/quadrature.hpp"

#include <cmath>

namespace loewner {

void gauss_legendre(int n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights)
{
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const double pi = 3.14159265358979323846;
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-like initial guess for the i-th root of P_n.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        nodes[i] = 0.5 * (b + a) - 0.5 * (b - a) * x;
        nodes[n - 1 - i] = 0.5 * (b + a) + 0.5 * (b - a) * x;
        weights[i] = weights[n - 1 - i] = 0.5 * (b - a) * w;
    }
}

}
