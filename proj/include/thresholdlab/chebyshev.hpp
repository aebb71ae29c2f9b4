#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "thresholdlab/errors.hpp"

namespace tlab {

template <class Real>
Real const_pi() {
    using std::acos;
    return acos(Real(-1));
}

template <>
inline double const_pi<double>() {
    return 3.14159265358979323846264338327950288;
}

namespace detail {

// Three-term recurrence; exact polynomial semantics, valid for any x.
template <class Real>
Real cheb_recurrence(int n, const Real& x, Real p0, Real p1) {
    if (n == 0) return p0;
    for (int k = 1; k < n; ++k) {
        Real next = 2 * x * p1 - p0;
        p0 = p1;
        p1 = next;
    }
    return p1;
}

template <class Real>
bool near_unit(const Real& x) {
    using std::abs;
    return abs(x) > Real(1) - Real(1e-8);
}

}  // namespace detail

// First-kind Chebyshev polynomial T_n. Trigonometric form on the interior of
// [-1, 1], recurrence near the endpoints and outside (where sin(acos x) -> 0).
template <class Real>
Real cheb_t(int n, const Real& x) {
    if (n < 0) throw std::invalid_argument("cheb_t: negative degree");
    using std::acos;
    using std::cos;
    if (!detail::near_unit(x)) return cos(Real(n) * acos(x));
    return detail::cheb_recurrence(n, x, Real(1), x);
}

// Second-kind Chebyshev polynomial U_n.
template <class Real>
Real cheb_u(int n, const Real& x) {
    if (n < 0) throw std::invalid_argument("cheb_u: negative degree");
    using std::acos;
    using std::sin;
    if (!detail::near_unit(x)) {
        Real theta = acos(x);
        return sin(Real(n + 1) * theta) / sin(theta);
    }
    return detail::cheb_recurrence(n, x, Real(1), 2 * x);
}

// dU_n/dx via (n+1)T_{n+1} = U'_n (x^2-1) + x U_n away from the endpoints;
// the differentiated recurrence covers the removable singularity at x = +-1.
template <class Real>
Real cheb_u_deriv(int n, const Real& x) {
    if (n < 0) throw std::invalid_argument("cheb_u_deriv: negative degree");
    if (n == 0) return Real(0);
    using std::abs;
    const Real disc = x * x - 1;
    if (abs(disc) >= Real(1e-8)) {
        return (Real(n + 1) * cheb_t(n + 1, x) - x * cheb_u(n, x)) / disc;
    }
    Real um(1), u = 2 * x, dm(0), d(2);
    for (int k = 1; k < n; ++k) {
        Real un = 2 * x * u - um;
        Real dn = 2 * u + 2 * x * d - dm;
        um = u;
        u = un;
        dm = d;
        d = dn;
    }
    return d;
}

// Constants of the T_kappa level-set fold, built once per solve.
template <class Real>
struct branch_ctx {
    int kappa = 0;
    Real pi{};
    Real step_angle{};    // 2 pi / kappa
    Real fold_point{};    // cos(pi / kappa)
    Real window_lower{};  // 2 cos(pi / kappa)
    Real window_upper{};  // 1 + cos(pi / kappa)
};

template <class Real>
branch_ctx<Real> make_branch_ctx(int kappa) {
    if (kappa < 2) throw std::invalid_argument("kappa must be >= 2");
    using std::cos;
    branch_ctx<Real> c;
    c.kappa = kappa;
    c.pi = const_pi<Real>();
    c.step_angle = 2 * c.pi / kappa;
    c.fold_point = cos(c.pi / kappa);
    c.window_lower = 2 * c.fold_point;
    c.window_upper = 1 + c.fold_point;
    return c;
}

// One chain step: the unique y with T_kappa(x) = T_kappa(E - y) on the branch
// y = E - cos(2 pi / kappa - acos x). Rejects rather than clamps when the
// angle leaves [0, pi].
template <class Real>
Real branch_step(const branch_ctx<Real>& ctx, const Real& energy, const Real& x) {
    using std::acos;
    using std::cos;
    const Real slack = 16 * std::numeric_limits<Real>::epsilon();
    Real xc = x;
    if (xc > Real(1)) {
        if (xc > Real(1) + slack) throw out_of_branch("branch_step: x above 1");
        xc = Real(1);
    } else if (xc < Real(-1)) {
        if (xc < Real(-1) - slack) throw out_of_branch("branch_step: x below -1");
        xc = Real(-1);
    }
    Real angle = ctx.step_angle - acos(xc);
    if (angle < Real(0)) {
        if (angle < -slack) throw out_of_branch("branch_step: angle left [0, pi]");
        angle = Real(0);
    }
    return energy - cos(angle);
}

inline double branch_step(int kappa, double energy, double x) {
    return branch_step(make_branch_ctx<double>(kappa), energy, x);
}

// Two-point compatibility bracket f(x) g(y) - f(y) g(x); antisymmetric in
// (f, g) and in (x, y).
template <class F, class G>
double bezout_bracket(F&& f, G&& g, double x, double y) {
    return f(x) * g(y) - f(y) * g(x);
}

}  // namespace tlab
