#pragma once
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace loewner {

// A choice of flat-metric partition function on annuli, determined by a
// central charge and the map tau -> log Z(A_tau). Instances must be pure
// so scans can evaluate them in any order.
struct Trivialization {
    std::string name;
    double c = 0.0;
    std::function<double(double)> log_Z_annulus;
};

// log Z(A_tau) = -(c/2) * zeta-determinant of the flat annulus
// [e^{-2 pi tau}, 1]; the boundary circles are geodesics of the flat
// metric so no boundary term enters.
Trivialization make_zeta_trivialization(double c);

// log Z(A_tau) = log sum_h n_h chi_{c,h}(e^{-pi/tau}), combined in log
// space since the characters underflow for small tau.
Trivialization make_character_trivialization(
    double c, const std::vector<std::pair<double, int>>& weights);

// log g(tau) = -(pi/3) c tau + log Z(A_tau); existence of an interior
// minimum of this function over (0, inf) is the modulus criterion.
double criterion(const Trivialization& t, double tau);

enum class MinimizerKind {
    interior_minimum,
    infimum_at_zero,
    infimum_at_infinity,
    monotone_no_min,
};

const char* minimizer_kind_name(MinimizerKind k);

struct CriterionResult {
    MinimizerKind classification = MinimizerKind::monotone_no_min;
    std::optional<double> tau_star;
    std::optional<double> value_at_star;
    std::vector<std::pair<double, double>> scan;  // (tau, log g)
};

// Scans log g on a geometric grid over [tau_min, tau_max], classifies the
// minimizer by endpoint slopes and interior brackets, and refines any
// interior bracket by golden-section search to 1e-10 in tau. A strongly
// negative right-end slope means the infimum escapes to infinity no
// matter what the finite scan shows.
CriterionResult classify_minimizer(const Trivialization& t, double tau_min, double tau_max,
                                   int grid);

}
