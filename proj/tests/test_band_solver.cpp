#include <doctest.h>

#include <cmath>
#include <random>

#include "thresholdlab/band_solver.hpp"
#include "properties.hpp"

using namespace tlab;
using doctest::Approx;

TEST_CASE("band window bounds") {
    const auto w = make_band_window(4);
    CHECK(w.lower == Approx(std::sqrt(2.0)));
    CHECK(w.upper == Approx(1 + std::sqrt(2.0) / 2));
    CHECK(w.lower < w.upper);
}

TEST_CASE("chain_points lower halves") {
    const auto a = chain_points(3, 5, 1.11207);
    REQUIRE(a.size() == 4);
    CHECK(a[0] == Approx(0.11207).epsilon(1e-9));
    CHECK(a[1] == Approx(0.30753).epsilon(1e-4));
    CHECK(a[2] == Approx(0.44178).epsilon(1e-4));
    CHECK(a[3] == Approx(0.55603).epsilon(1e-4));

    const auto b = chain_points(4, 1, 1.6);
    REQUIRE(b.size() == 2);
    CHECK(b[0] == Approx(0.6));
    CHECK(b[1] == Approx(0.8));

    // kappa = 2 steps are X_{i+1} = E + X_i
    const auto c = chain_points(2, 3, 0.4);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == Approx(-0.6));
    CHECK(c[1] == Approx(-0.2));
    CHECK(c[2] == Approx(0.2));
}

TEST_CASE("closure_residual vanishes at the tabulated endpoints") {
    CHECK(std::abs(closure_residual(4, 1, 1.6)) < 1e-12);
    const double e2 = (2 + std::sqrt(2.0) + std::sqrt(2 + 4 * std::sqrt(2.0))) / 4;
    CHECK(std::abs(closure_residual(4, 2, e2)) < 1e-10);
    const double e2k3 = (9 + std::sqrt(33.0)) / 12;
    CHECK(std::abs(closure_residual(3, 2, e2k3)) < 1e-10);
}

TEST_CASE("solve_band_endpoint closed forms") {
    for (int n = 0; n <= 5; ++n)
        CHECK(solve_band_endpoint(2, n, 1e-12).energy == Approx(2.0 / (n + 2)).epsilon(1e-12));
    CHECK(solve_band_endpoint(4, 6, 1e-10).energy == Approx(1.46568).epsilon(1e-5));
    CHECK(solve_band_endpoint(3, 1, 1e-12).energy ==
          Approx((5 + 3 * std::sqrt(2.0)) / 7).epsilon(1e-12));
}

TEST_CASE("band_sequence matches the reference tables") {
    const auto k2 = band_sequence(2, 5);
    const double expect2[] = {1.0, 2.0 / 3, 0.5, 0.4, 1.0 / 3, 2.0 / 7};
    for (int n = 0; n <= 5; ++n) CHECK(k2[n].energy == Approx(expect2[n]).epsilon(1e-12));

    const auto k4 = band_sequence(4, 5);
    const double expect4[] = {1.70711, 1.6, 1.54532, 1.51271, 1.49137, 1.47650};
    for (int n = 0; n <= 5; ++n) CHECK(k4[n].energy == Approx(expect4[n]).epsilon(1e-5));

    const auto k3 = band_sequence(3, 5);
    CHECK(k3.back().energy == Approx(1.11207).epsilon(1e-5));

    for (const auto& seq : {k2, k3, k4}) {
        const auto w = make_band_window(seq[0].kappa);
        for (size_t n = 1; n < seq.size(); ++n) {
            CHECK(seq[n].energy < seq[n - 1].energy);
            CHECK(seq[n].energy > w.lower);
        }
    }
}

TEST_CASE("chains agree with the explicit kappa=3 radical forms") {
    const auto sol = solve_band_endpoint(3, 5, 1e-13);
    const double e = sol.energy;
    const double x1 = -0.5 + 1.5 * e - std::sqrt(3.0) / 2 * std::sqrt(e * (2 - e));
    const double x2 = -e / 4 + std::sqrt(3.0) / 4 * std::sqrt(4 - e * e);
    CHECK(sol.points[1] == Approx(x1).epsilon(1e-6));
    CHECK(sol.points[2] == Approx(x2).epsilon(1e-6));
}

TEST_CASE("chain level-set consistency along solved bands") {
    for (int kappa : {2, 3, 4, 5}) {
        const auto sol = solve_band_endpoint(kappa, 4);
        for (size_t i = 0; i + 1 < sol.points.size(); ++i)
            CHECK(std::abs(cheb_t(kappa, sol.points[i]) -
                           cheb_t(kappa, sol.energy - sol.points[i + 1])) < 1e-10);
    }
}

TEST_CASE("closure residual is monotone in energy") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> pick_kappa(2, 8), pick_band(1, 12);
    for (int c = 0; c < 200; ++c) {
        const int kappa = pick_kappa(rng);
        const int band = pick_band(rng);
        const auto w = make_band_window(kappa);
        std::uniform_real_distribution<double> pick_e(w.lower, w.upper);
        double e1 = pick_e(rng), e2 = pick_e(rng);
        if (e1 > e2) std::swap(e1, e2);
        double r1, r2;
        try {
            r1 = closure_residual(kappa, band, e1);
            r2 = closure_residual(kappa, band, e2);
        } catch (const out_of_branch&) {
            continue;
        }
        CHECK(r1 <= r2 + 1e-12);
    }
}

TEST_CASE("rate_fit on the closed-form kappa=2 sequence") {
    const std::vector<long> ns = {10, 20, 40, 80};
    const auto fit = rate_fit(2, ns);
    // independent oracle: E_{2n} = 1/(n+1) exactly, so regress that directly
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (long n : ns) {
        const double lx = std::log(double(n)), ly = std::log(1.0 / (n + 1));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double m = double(ns.size());
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    CHECK(fit.slope == Approx(slope).epsilon(1e-9));
    CHECK(fit.slope > -1.05);
    CHECK(fit.slope < -0.95);
}

TEST_CASE("rate_fit input validation") {
    CHECK_THROWS_AS(rate_fit(4, {}), degenerate_input);
    CHECK_THROWS_AS(rate_fit(4, {0, 5}), degenerate_input);
}

TEST_CASE("solver argument validation") {
    CHECK_THROWS_AS(solve_band_endpoint(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(solve_band_endpoint(3, -1), std::invalid_argument);
    CHECK_THROWS_AS(solve_band_endpoint(3, 2, 0.0), std::invalid_argument);
}

TEST_CASE("band solver property suites") {
    CHECK(props::chain_symmetry(200) == 0);
}
