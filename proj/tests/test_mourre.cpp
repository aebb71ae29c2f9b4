#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/SVD>

#include "thresholdlab/mourre.hpp"
#include "properties.hpp"

using namespace tlab;
using doctest::Approx;

namespace {

void check_rho(const coefficient_solution& sol, const std::vector<double>& expect, double tol) {
    REQUIRE(sol.rho.size() == expect.size());
    for (size_t i = 0; i < expect.size(); ++i)
        CHECK(std::abs(sol.rho[i] - expect[i]) <= tol);
}

}  // namespace

TEST_CASE("g_symbol ratios at the first-band chain points") {
    // at x = E - 1 the reflected term vanishes, so the ratio is a U quotient
    const double r2 = -g_symbol(2, 1, 2.0 / 3, -1.0 / 3) / g_symbol(2, 2, 2.0 / 3, -1.0 / 3);
    CHECK(r2 == Approx(9.0 / 14).epsilon(1e-12));
    const double r4 = -g_symbol(4, 1, 1.6, 0.6) / g_symbol(4, 2, 1.6, 0.6);
    CHECK(r4 == Approx(625.0 / 1054).epsilon(1e-12));
}

TEST_CASE("g_symbol vanishes identically at the top endpoint fold") {
    for (int kappa : {2, 3, 4, 5, 7}) {
        const auto w = make_band_window(kappa);
        const double fold = w.upper - 1;
        for (int j = 1; j <= 4; ++j) CHECK(std::abs(g_symbol(kappa, j, w.upper, fold)) < 1e-12);
    }
}

TEST_CASE("g_symbol_deriv is zero at the midpoint and antisymmetric") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> pick_kappa(2, 7), pick_j(1, 5);
    for (int c = 0; c < 100; ++c) {
        const int kappa = pick_kappa(rng), j = pick_j(rng);
        const auto w = make_band_window(kappa);
        std::uniform_real_distribution<double> pick_e(w.lower, w.upper);
        const double e = pick_e(rng);
        CHECK(std::abs(g_symbol_deriv(kappa, j, e, e / 2)) < 1e-10);
        std::uniform_real_distribution<double> pick_t(0.0, 1 - e / 2);
        const double t = pick_t(rng);
        const double dp = g_symbol_deriv(kappa, j, e, e / 2 + t);
        const double dm = g_symbol_deriv(kappa, j, e, e / 2 - t);
        CHECK(std::abs(dp + dm) < 1e-9 * (1 + std::abs(dp)));
    }
}

TEST_CASE("assemble_constraints matches the first-band system shape") {
    const auto m = assemble_constraints({4, 1, {4, 8}});
    CHECK(m.rows() == 6);  // 3 + 1 value/derivative rows at E_1, 2 value rows at E_0
    CHECK(m.cols() == 2);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > 1e-13 * s(0)) ++rank;
    CHECK(rank == 1);

    // kappa=2 first band: the top-endpoint rows vanish as well
    const auto m2 = assemble_constraints({2, 1, {2, 4}});
    Eigen::JacobiSVD<Eigen::MatrixXd> svd2(m2);
    int rank2 = 0;
    for (int i = 0; i < svd2.singularValues().size(); ++i)
        if (svd2.singularValues()(i) > 1e-13 * svd2.singularValues()(0)) ++rank2;
    CHECK(rank2 == 1);
}

TEST_CASE("solve_coefficients reproduces the reference vectors") {
    check_rho(solve_coefficients({2, 1, {2, 4}}), {1, 9.0 / 14}, 1e-12);
    check_rho(solve_coefficients({3, 5, {3, 6, 9, 12, 15, 18, 21, 24, 27, 30}}),
              {1, 1.599931, 1.645307, 1.27734, 0.77838, 0.37292, 0.13741, 0.03703, 0.00657,
               0.00058},
              1e-4);
    check_rho(solve_coefficients({4, 3, {4, 8, 12, 16, 20, 24}}),
              {1, 1.37002, 1.06973, 0.53992, 0.16964, 0.02655}, 1e-4);
}

TEST_CASE("solve_coefficients raises on a defective index set") {
    // an odd-sized base with a straggler has no one-dimensional nullspace
    CHECK_THROWS_AS(solve_coefficients({2, 5, {2, 4, 6, 8, 10, 12, 14, 18, 20}}),
                    ambiguous_nullspace);
    CHECK_THROWS_AS(solve_coefficients({4, 2, {4, 8, 12, 13}}), std::invalid_argument);
    CHECK_THROWS_AS(solve_coefficients({4, 2, {8, 4, 12, 16}}), std::invalid_argument);
}

TEST_CASE("first-band coefficients equal the U quotients for kappa=2..9") {
    const double printed[] = {0.6428, 0.6027, 0.5929, 0.5889, 0.5869, 0.5857, 0.5850, 0.5844};
    for (int kappa = 2; kappa <= 9; ++kappa) {
        const auto sol = solve_coefficients({kappa, 1, {kappa, 2 * kappa}});
        const double e1 = solve_band_endpoint(kappa, 1).energy;
        const double at_x0 = -cheb_u(kappa - 1, e1 - 1) / cheb_u(2 * kappa - 1, e1 - 1);
        const double at_mid = -cheb_u(kappa - 1, e1 / 2) / cheb_u(2 * kappa - 1, e1 / 2);
        CHECK(sol.rho[1] == Approx(at_x0).epsilon(1e-10));
        CHECK(sol.rho[1] == Approx(at_mid).epsilon(1e-10));
        CHECK(std::abs(sol.rho[1] - printed[kappa - 2]) <= 5e-4);

        const auto uk = [&](double t) { return cheb_u(kappa - 1, t); };
        const auto u2k = [&](double t) { return cheb_u(2 * kappa - 1, t); };
        CHECK(std::abs(bezout_bracket(uk, u2k, e1 - 1, e1 / 2)) < 1e-9);
    }
}

TEST_CASE("evaluate_g_sum vanishes on the chain and is linear in rho") {
    const auto sol = solve_coefficients({4, 1, {4, 8}});
    const auto chain = solve_band_endpoint(4, 1);
    for (double x : chain.points)
        CHECK(std::abs(evaluate_g_sum(4, sol.indices, sol.rho, chain.energy, x)) < 1e-8);

    std::vector<double> scaled = sol.rho;
    for (auto& r : scaled) r *= 3.5;
    for (double x : {0.65, 0.8, 0.95}) {
        const double g1 = evaluate_g_sum(4, sol.indices, sol.rho, 1.65, x);
        const double g3 = evaluate_g_sum(4, sol.indices, scaled, 1.65, x);
        CHECK(g3 == Approx(3.5 * g1).epsilon(1e-12));
    }
}

TEST_CASE("interior energies keep the first-band symbol positive") {
    const auto sol = solve_coefficients({4, 1, {4, 8}});
    double min_interior = 1e9;
    for (int i = 0; i < 501; ++i) {
        const double x = 0.65 + (1 - 0.65) * i / 500.0;
        min_interior = std::min(min_interior, evaluate_g_sum(4, sol.indices, sol.rho, 1.65, x));
    }
    CHECK(min_interior > 0);

    // at the endpoint the minimum touches zero
    double min_endpoint = 1e9;
    const auto chain = solve_band_endpoint(4, 1);
    for (int i = 0; i < 2001; ++i) {
        const double x = 0.6 + (1 - 0.6) * i / 2000.0;
        min_endpoint = std::min(min_endpoint, evaluate_g_sum(4, sol.indices, sol.rho, 1.6, x));
    }
    for (double x : chain.points)
        min_endpoint = std::min(min_endpoint, evaluate_g_sum(4, sol.indices, sol.rho, 1.6, x));
    CHECK(std::abs(min_endpoint) < 1e-8);
}

TEST_CASE("validate_sigma on a reference valid/invalid pair") {
    const auto ok = validate_sigma({4, 2, {4, 8, 12, 24}});
    CHECK(ok.valid);
    CHECK(ok.min_value > 0);
    CHECK(ok.e_grid == 101);
    CHECK(ok.x_grid == 2001);
    const auto bad = validate_sigma({4, 2, {4, 8, 12, 16}});
    CHECK_FALSE(bad.valid);
    CHECK(bad.min_value < 0);
    // the witness pins where the symbol dips
    CHECK(bad.witness_x > bad.witness_energy - 1);
    CHECK(bad.witness_x < 1);
}

TEST_CASE("half-interval sampling sees the same minimum by symmetry") {
    const auto sol = solve_coefficients({4, 2, {4, 8, 12, 16}});
    const auto lo = solve_band_endpoint(4, 2);
    const auto hi = solve_band_endpoint(4, 1);
    const double e = 0.5 * (lo.energy + hi.energy);
    double full = 1e9, half = 1e9;
    const int n = 4001;  // odd: the grid contains the midpoint exactly
    for (int i = 0; i < n; ++i) {
        const double x = (e - 1) + (2 - e) * i / (n - 1.0);
        const double g = evaluate_g_sum(4, sol.indices, sol.rho, e, x);
        full = std::min(full, g);
        if (x <= e / 2 + 1e-15) half = std::min(half, g);
    }
    CHECK(half == Approx(full).epsilon(1e-12));
}

TEST_CASE("mourre property suites") {
    CHECK(props::g_symbol_symmetry(300) == 0);
    CHECK(props::g_deriv_vs_finite_difference(300) == 0);
}
