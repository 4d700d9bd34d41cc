#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "loewner/cft.hpp"
#include "loewner/errors.hpp"
#include "loewner/potentials.hpp"
#include "loewner/specfun.hpp"
#include "loewner/zetadet.hpp"

using namespace loewner;

namespace {

const double PI = 3.14159265358979323846;

double ls_slope(const std::vector<std::pair<double, double>>& pts)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(pts.size());
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("zeta trivialization wraps the flat-annulus determinant")
{
    Trivialization tz = make_zeta_trivialization(1.0);
    CHECK(tz.c == 1.0);

    // direct substitution at tau = 1
    CHECK(tz.log_Z_annulus(1.0)
          == doctest::Approx(-0.5 * det_annulus(FlatAnnulus{std::exp(-2.0 * PI), 1.0}))
                 .epsilon(1e-15));

    // log Z is linear in the central charge
    Trivialization tz25 = make_zeta_trivialization(2.5);
    for (double tau : {0.3, 1.0, 4.7})
        CHECK(tz25.log_Z_annulus(tau)
              == doctest::Approx(2.5 * tz.log_Z_annulus(tau)).epsilon(1e-14));

    // criterion is the definition, not a separate quantity
    for (double tau : {0.2, 1.1, 6.0})
        CHECK(criterion(tz, tau) + (PI / 3.0) * tz.c * tau
              == doctest::Approx(tz.log_Z_annulus(tau)).epsilon(1e-14));

    // the -(pi/3) c tau prefactor cancels the linear part of the
    // determinant, leaving (c/2) times the circle-pair potential up to
    // the constant -(c/2) log 2
    for (double c : {1.0, 2.0, 0.37}) {
        Trivialization t = make_zeta_trivialization(c);
        for (double tau = 0.1; tau <= 8.0; tau += 0.37)
            CHECK(std::abs(criterion(t, tau) - 0.5 * c * lpot_circles(tau)
                           + 0.5 * c * std::log(2.0))
                  < 1e-12);
    }

    // strictly decreasing tail: the infimum escapes to infinity
    double prev = criterion(tz, 3.0);
    for (double tau = 3.25; tau <= 12.0; tau += 0.25) {
        const double v = criterion(tz, tau);
        CHECK(v < prev);
        prev = v;
    }
    CHECK(classify_minimizer(tz, 0.05, 20.0, 64).classification
          == MinimizerKind::infimum_at_infinity);
    CHECK(classify_minimizer(make_zeta_trivialization(0.37), 0.05, 20.0, 64).classification
          == MinimizerKind::infimum_at_infinity);

    CHECK_THROWS_AS(make_zeta_trivialization(0.0), validation_error);
    CHECK_THROWS_AS(make_zeta_trivialization(std::nan("")), validation_error);
    CHECK_THROWS_AS(criterion(tz, 0.0), validation_error);
    CHECK_THROWS_AS(criterion(tz, -2.0), validation_error);
    CHECK_THROWS_AS(tz.log_Z_annulus(-1.0), validation_error);
}

TEST_CASE("character trivialization combines Virasoro characters in log space")
{
    // a single module with h = c/24 cancels the prefactor exponent
    Trivialization tid = make_character_trivialization(0.7, {{0.7 / 24.0, 1}});
    for (double tau : {0.7, 1.3, 3.1})
        CHECK(tid.log_Z_annulus(tau)
              == doctest::Approx(-log_euler_phi(std::exp(-PI / tau))).epsilon(1e-14));

    // multiplicity enters as an additive log n
    Trivialization t3 = make_character_trivialization(0.5, {{0.4, 3}});
    Trivialization t1 = make_character_trivialization(0.5, {{0.4, 1}});
    for (double tau : {0.4, 2.0})
        CHECK(t3.log_Z_annulus(tau)
              == doctest::Approx(std::log(3.0) + t1.log_Z_annulus(tau)).epsilon(1e-14));

    // small-tau divergence at the rate -(pi/tau)(h - c/24)
    Trivialization ts = make_character_trivialization(0.3, {{0.2, 1}});
    const double rate = -(PI) * (0.2 - 0.3 / 24.0);
    CHECK(std::abs(ts.log_Z_annulus(0.5) / (rate / 0.5) - 1.0) < 2e-3);
    CHECK(std::abs(ts.log_Z_annulus(0.25) / (rate / 0.25) - 1.0) < 1e-5);
    CHECK(std::abs(ts.log_Z_annulus(0.1) / (rate / 0.1) - 1.0) < 1e-12);

    // as tau -> 0 the smallest h dominates the sum completely
    Trivialization td = make_character_trivialization(0.8, {{0.1, 2}, {0.9, 5}});
    Trivialization tlow = make_character_trivialization(0.8, {{0.1, 1}});
    CHECK(td.log_Z_annulus(0.05)
          == doctest::Approx(std::log(2.0) + tlow.log_Z_annulus(0.05)).epsilon(1e-13));

    // frozen criterion values for c = 0.3, h = 0.2: strictly increasing
    // across the whole range, so the infimum sits at tau -> 0 (the
    // exponent h - c/24 > 0 drives log Z to -inf there)
    const double tau_pts[6] = {0.05, 0.2, 1.0, 2.0, 5.0, 20.0};
    const double want[6] = {-11.796680414229673, -3.008074815110465,
                            -0.85707890912771534, -0.63424231829297495,
                            -0.24808465858995676, 2.3083530619070389};
    Trivialization t32 = make_character_trivialization(0.3, {{0.2, 1}});
    for (int i = 0; i < 6; ++i) {
        CHECK(criterion(t32, tau_pts[i]) == doctest::Approx(want[i]).epsilon(1e-12));
        if (i > 0) CHECK(want[i] > want[i - 1]);
    }

    CHECK_THROWS_AS(make_character_trivialization(0.5, {}), validation_error);
    CHECK_THROWS_AS(make_character_trivialization(0.5, {{0.4, 0}}), validation_error);
    CHECK_THROWS_AS(make_character_trivialization(0.5, {{0.4, -2}}), validation_error);
    CHECK_THROWS_AS(make_character_trivialization(0.5, {{std::nan(""), 1}}),
                    validation_error);
    CHECK_THROWS_AS(make_character_trivialization(std::nan(""), {{0.4, 1}}),
                    validation_error);
    CHECK_THROWS_AS(ts.log_Z_annulus(0.0), validation_error);
}

TEST_CASE("minimizer classification over the modulus line")
{
    // c < 1/2 with h < c/24 blows up at both ends, so a genuine interior
    // minimum exists; tau* and the value are frozen from this code
    Trivialization t35 = make_character_trivialization(0.3, {{0.005, 1}});
    CriterionResult r = classify_minimizer(t35, 0.05, 20.0, 64);
    CHECK(r.classification == MinimizerKind::interior_minimum);
    REQUIRE(r.tau_star.has_value());
    REQUIRE(r.value_at_star.has_value());
    CHECK(*r.tau_star == doctest::Approx(2.1488213160183252).epsilon(1e-6));
    CHECK(*r.value_at_star == doctest::Approx(-0.32893715892401365).epsilon(1e-12));
    CHECK(*r.tau_star > 0.05);
    CHECK(*r.tau_star < 20.0);
    CHECK(r.scan.size() == 64);
    CHECK(r.scan.front().first == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(r.scan.back().first == doctest::Approx(20.0).epsilon(1e-14));
    for (const auto& [tau, v] : r.scan) CHECK(v == criterion(t35, tau));

    // the refined point is a local minimum, not just a grid artifact
    CHECK(criterion(t35, *r.tau_star - 1e-4) > *r.value_at_star);
    CHECK(criterion(t35, *r.tau_star + 1e-4) > *r.value_at_star);

    // stable under doubling the grid and widening the range both ways;
    // tau* itself is flat enough that roundoff limits agreement to ~3e-8
    CriterionResult r2 = classify_minimizer(t35, 0.025, 40.0, 128);
    CHECK(r2.classification == MinimizerKind::interior_minimum);
    CHECK(*r2.tau_star == doctest::Approx(*r.tau_star).epsilon(5e-7));
    CHECK(*r2.value_at_star == doctest::Approx(*r.value_at_star).epsilon(1e-13));

    // h > c/24 pushes the infimum to tau -> 0 instead
    CHECK(classify_minimizer(make_character_trivialization(0.3, {{0.2, 1}}), 0.05, 20.0, 64)
              .classification
          == MinimizerKind::infimum_at_zero);
    CHECK(classify_minimizer(make_character_trivialization(0.3, {{0.2, 1}}), 0.025, 40.0, 128)
              .classification
          == MinimizerKind::infimum_at_zero);

    // c > 1/2 makes the large-tau slope negative
    Trivialization t11 = make_character_trivialization(1.0, {{1.0, 1}});
    CHECK(classify_minimizer(t11, 0.05, 20.0, 64).classification
          == MinimizerKind::infimum_at_infinity);
    CHECK(classify_minimizer(t11, 0.025, 40.0, 128).classification
          == MinimizerKind::infimum_at_infinity);

    // hand-built trivialization with a slow flat decay: the scan minimum
    // sits at the right end but the slope there is negligible
    Trivialization flat{"flat", 0.0, [](double tau) { return 1e-5 / (1.0 + tau); }};
    CHECK(classify_minimizer(flat, 0.05, 20.0, 64).classification
          == MinimizerKind::monotone_no_min);

    // large-tau slope of log g approaches pi/6 - pi c/3; the fit removes
    // the half log(2 tau) drift of the character sum so the window
    // [20, 40] sees the linear growth cleanly
    for (double c : {0.3, 1.0}) {
        Trivialization tc = make_character_trivialization(c, {{0.1, 2}, {0.3, 1}});
        std::vector<std::pair<double, double>> pts;
        for (double tau = 20.0; tau <= 40.0; tau += 1.0)
            pts.emplace_back(tau, criterion(tc, tau) + 0.5 * std::log(2.0 * tau));
        const double target = PI / 6.0 - PI * c / 3.0;
        CHECK(std::abs(ls_slope(pts) - target) < 0.01 * std::abs(target));
    }

    Trivialization bad{"bad", 0.0, [](double) { return std::nan(""); }};
    CHECK_THROWS_AS(classify_minimizer(bad, 0.05, 20.0, 64), nonfinite_error);
    CHECK_THROWS_AS(classify_minimizer(t35, 0.0, 5.0, 64), validation_error);
    CHECK_THROWS_AS(classify_minimizer(t35, 2.0, 1.0, 64), validation_error);
    CHECK_THROWS_AS(classify_minimizer(t35, 0.05, 20.0, 15), validation_error);
}
