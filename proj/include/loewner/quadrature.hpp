#pragma once
#include <vector>

namespace loewner {

// Gauss-Legendre nodes and weights on [a, b]. Newton iteration on the
// Legendre recurrence, accurate to machine precision for n up to a few
// thousand.
void gauss_legendre(int n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights);

}
