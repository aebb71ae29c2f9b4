#include <doctest.h>

#include <cmath>
#include <random>

#include "thresholdlab/chebyshev.hpp"
#include "properties.hpp"

using namespace tlab;
using doctest::Approx;

TEST_CASE("cheb_t closed-form values") {
    CHECK(cheb_t(4, 0.5) == Approx(-0.5).epsilon(1e-13));
    for (int n : {0, 1, 2, 5, 17, 40}) CHECK(cheb_t(n, 1.0) == Approx(1.0).epsilon(1e-13));
    CHECK(cheb_t(3, std::cos(const_pi<double>() / 3)) == Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("cheb_t matches cos(n acos x) on the interior") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> pick(-1.0, 1.0);
    for (int c = 0; c < 200; ++c) {
        const double x = pick(rng);
        const int n = c % 30;
        CHECK(std::abs(cheb_t(n, x) - std::cos(n * std::acos(x))) < 1e-13);
    }
}

TEST_CASE("cheb_u values") {
    CHECK(std::abs(cheb_u(7, 1 / std::sqrt(2.0))) < 1e-12);
    for (int kappa = 2; kappa <= 9; ++kappa)
        CHECK(std::abs(cheb_u(kappa - 1, std::cos(const_pi<double>() / kappa))) < 1e-12);
    // 8 x^3 - 4 x at x = 3/5
    CHECK(cheb_u(3, 0.6) == Approx(-0.672).epsilon(1e-13));
}

TEST_CASE("cheb_u near and beyond the endpoints") {
    CHECK(cheb_u(5, 1.0) == Approx(6.0));            // U_n(1) = n + 1
    CHECK(cheb_u(5, -1.0) == Approx(-6.0));          // (-1)^n (n+1)
    CHECK(cheb_u(3, 2.0) == Approx(8 * 8.0 - 4 * 2.0));
}

TEST_CASE("cheb_u_deriv closed-form values") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> pick(-2.0, 2.0);
    for (int c = 0; c < 50; ++c) CHECK(cheb_u_deriv(1, pick(rng)) == Approx(2.0));
    CHECK(cheb_u_deriv(3, 0.0) == Approx(-4.0));  // d/dx (8x^3 - 4x) at 0
    const double h = 1e-6;
    const double fd = (cheb_u(5, 0.3 + h) - cheb_u(5, 0.3 - h)) / (2 * h);
    CHECK(cheb_u_deriv(5, 0.3) == Approx(fd).epsilon(1e-5));
    // continuity through the endpoints: U'_n(1) = n(n+1)(n+2)/3
    CHECK(cheb_u_deriv(3, 1.0) == Approx(20.0));
    CHECK(cheb_u_deriv(3, -1.0) == Approx(20.0));  // even derivative at odd n
    CHECK(cheb_u_deriv(4, -1.0) == Approx(-40.0));
    CHECK(cheb_u_deriv(3, 1.0 - 1e-9) == Approx(20.0).epsilon(1e-6));
}

TEST_CASE("branch_step reproduces the tabulated chain values") {
    CHECK(branch_step(3, 1.11207, 0.11207) == Approx(0.30753).epsilon(1e-4));
    CHECK(branch_step(4, 1.54532, 0.54532) == Approx(std::sqrt(2.0) / 2).epsilon(1e-4));
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> pick_x(-1.0, 1.0), pick_e(0.0, 1.0);
    for (int c = 0; c < 200; ++c) {
        const double e = pick_e(rng), x = pick_x(rng);
        CHECK(std::abs(branch_step(2, e, x) - (e + x)) < 1e-12);
    }
}

TEST_CASE("branch_step rejects when the angle leaves [0, pi]") {
    // x below cos(2 pi / kappa) pushes the angle negative
    CHECK_THROWS_AS(branch_step(4, 1.6, -0.5), out_of_branch);
    CHECK_THROWS_AS(branch_step(3, 1.2, -0.9), out_of_branch);
    CHECK_THROWS_AS(branch_step(4, 1.6, 1.5), out_of_branch);
}

TEST_CASE("bezout_bracket") {
    const auto u1 = [](double x) { return cheb_u(1, x); };
    const auto u3 = [](double x) { return cheb_u(3, x); };
    CHECK(bezout_bracket(u1, u1, 0.3, -0.8) == Approx(0.0));
    CHECK(bezout_bracket(u1, u3, -1.0 / 3, 1.0 / 3) == Approx(0.0));
    // antisymmetry
    CHECK(bezout_bracket(u1, u3, 0.2, 0.7) == Approx(-bezout_bracket(u3, u1, 0.2, 0.7)));
    CHECK(bezout_bracket(u1, u3, 0.2, 0.7) == Approx(-bezout_bracket(u1, u3, 0.7, 0.2)));
}

TEST_CASE("unit-circle pair brackets of U vanish") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> pick(-0.999, 0.999);
    for (int j = 1; j <= 3; ++j) {
        for (int l = 1; l <= 3; ++l) {
            const auto f = [&](double t) { return cheb_u(4 * j - 1, t); };
            const auto g = [&](double t) { return cheb_u(4 * l - 1, t); };
            for (int c = 0; c < 40; ++c) {
                const double x = pick(rng);
                const double y = std::sqrt(1 - x * x);
                CHECK(std::abs(bezout_bracket(f, g, x, y)) < 1e-10);
            }
        }
    }
}

TEST_CASE("index relations at the kappa=4 fold points") {
    const double a = std::sqrt(2.0) / std::sqrt(3.0);
    const double b = 1 / std::sqrt(3.0);
    for (int j = 1; j <= 10; ++j) {
        CHECK(std::abs(cheb_u(4 * j - 1, 1 / std::sqrt(2.0))) < 1e-12);
        CHECK(std::abs(cheb_u(4 * j - 1, a) + std::sqrt(2.0) * cheb_u(4 * j - 1, b)) < 1e-10);
    }
}

TEST_CASE("chebyshev property suites") {
    CHECK(props::pell_identity(300) == 0);
    CHECK(props::level_set_identity(300) == 0);
    CHECK(props::t4_factorization(40, 300) == 0);
    CHECK(props::derivative_vs_finite_difference(300) == 0);
}
