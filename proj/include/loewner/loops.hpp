#pragma once
#include <memory>
#include <vector>

#include "loewner/fft.hpp"

namespace loewner {

struct Uniformization;

// Closed analytic curve as a trigonometric polynomial
//   gamma(theta) = sum_{k=-M}^{M} c_k e^{i k theta},
// traversed counterclockwise; coeffs()[M + k] holds c_k.
class Loop {
public:
    Loop() = default;
    explicit Loop(std::vector<cpx> coeffs);  // size 2M+1, M <= 256

    static Loop circle(cpx center, double radius);
    // least-squares trigonometric fit on uniform samples (n >= 2*degree+1)
    static Loop fit(const std::vector<cpx>& samples, int degree);

    int degree() const { return M_; }
    const std::vector<cpx>& coeffs() const { return c_; }
    cpx coeff(int k) const;

    cpx point(double theta) const;
    cpx tangent(double theta) const;   // d/dtheta
    std::vector<cpx> sample(int n) const;

    // sup bound sum |k c_k| for the parametric speed
    double speed_bound() const;

private:
    int M_ = 0;
    std::vector<cpx> c_{cpx(0.0)};
};

struct MoebiusMap {
    cpx a{1.0}, b{0.0}, c{0.0}, d{1.0};  // ad - bc = 1

    // scales arbitrary (a,b,c,d) with ad != bc to determinant 1
    static MoebiusMap normalized(cpx a, cpx b, cpx c, cpx d);
    cpx operator()(cpx z) const;
    MoebiusMap inverse() const { return {d, -b, -c, a}; }
};

struct ValidationReport {
    bool simple1 = false, simple2 = false;        // no self-intersections
    bool winding1 = false, winding2 = false;      // tangent winding = 1
    double min_speed1 = 0.0, min_speed2 = 0.0;    // min |gamma'| on samples
    bool zero_in_d1 = false;                      // 0 enclosed by gamma1
    bool nested = false;                          // gamma1 inside gamma2
    bool disjoint = false;                        // tube-certified
    double disjointness_margin = 0.0;             // min pairwise sample distance
    double decay_rate1 = 0.0, decay_rate2 = 0.0;  // fitted rho, |c_k| ~ C rho^|k|
    bool passed = false;
};

// Validated pair of disjoint nested loops in standard position: 0 inside
// gamma1, infinity on the unbounded side of gamma2, nonempty annulus
// between them. If 0 is not enclosed by gamma1 as given, both loops are
// translated once to restore it; otherwise coefficients pass through
// unchanged. Construction throws validation_error when the checks fail.
class TwoLoopConfig {
public:
    TwoLoopConfig(Loop g1, Loop g2);
    ~TwoLoopConfig();
    TwoLoopConfig(const TwoLoopConfig&);
    TwoLoopConfig& operator=(const TwoLoopConfig&);
    TwoLoopConfig(TwoLoopConfig&&) noexcept;
    TwoLoopConfig& operator=(TwoLoopConfig&&) noexcept;

    const Loop& gamma1() const { return g1_; }
    const Loop& gamma2() const { return g2_; }
    const ValidationReport& report() const { return report_; }

    // cached uniformization, computed on first use
    const Uniformization& uniformization(double tol = 1e-8, int max_n = 1024) const;

private:
    friend TwoLoopConfig make_circle_pair(double tau);
    Loop g1_, g2_;
    ValidationReport report_;
    mutable std::shared_ptr<const Uniformization> cache_;
};

// Concentric pair e^{-2 pi tau} S^1 and S^1 with the exact uniformization
// (identity maps) cached.
TwoLoopConfig make_circle_pair(double tau);

// Transform both loops, refit trigonometric coefficients on a dense
// sample, and re-establish standard position (translating only when the
// transformed pair requires it). The pole of m must lie on the unbounded
// side of gamma2 (or at infinity).
TwoLoopConfig apply_moebius(const MoebiusMap& m, const TwoLoopConfig& cfg);

// Diagnostics for a candidate pair; never throws on geometric failure.
ValidationReport validate(const Loop& g1, const Loop& g2);
ValidationReport validate(const TwoLoopConfig& cfg);

// winding number of a sampled closed curve about a point
int winding_number(const std::vector<cpx>& samples, cpx p);

// distance from p to the curve, Newton-refined from the nearest of a
// dense sample
double curve_distance(const Loop& loop, cpx p);

// same, for many points sharing one dense sample of the curve
std::vector<double> curve_distances(const Loop& loop, const std::vector<cpx>& pts);

}
