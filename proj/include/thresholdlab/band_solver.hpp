#pragma once

#include <utility>
#include <vector>

#include "thresholdlab/chebyshev.hpp"
#include "thresholdlab/errors.hpp"

namespace tlab {

// The energy window J(kappa) = (2 cos(pi/kappa), 1 + cos(pi/kappa)).
struct band_window {
    int kappa = 0;
    double lower = 0;
    double upper = 0;
};

band_window make_band_window(int kappa);

// A band endpoint energy with its full ordered chain
// E - 1 = X_0 < X_1 < ... < X_n < X_{n+1} = 1.
struct chain_solution {
    int kappa = 0;
    int band = 0;
    double energy = 0;
    std::vector<double> points;
};

namespace detail {

// Closure residual from the minimal number of branch steps: the midpoint
// condition X_{(n+1)/2} = E/2 for odd n, the fold condition
// X_{n/2} = cos(pi/kappa) for even n. Zero exactly at E = E_n.
template <class Real>
Real closure_residual_impl(const branch_ctx<Real>& ctx, int band, const Real& energy) {
    const int steps = (band % 2 == 1) ? (band + 1) / 2 : band / 2;
    Real x = energy - 1;
    for (int i = 0; i < steps; ++i) x = branch_step(ctx, energy, x);
    if (band % 2 == 1) return x - energy / 2;
    return x - ctx.fold_point;
}

}  // namespace detail

// Lower half of the chain, X_0 .. X_ceil((n+1)/2), iterated from X_0 = E - 1.
// The caller completes the upper half by the symmetry X_{n+1-i} = E - X_i.
std::vector<double> chain_points(int kappa, int band, double energy);

// Signed closure residual at this energy; propagates out_of_branch.
double closure_residual(int kappa, int band, double energy);

// Band endpoint E_n and its chain: scan the window for a sign change of the
// closure residual, then bisect until |residual| < tol.
chain_solution solve_band_endpoint(int kappa, int band, double tol = 1e-12);

// E_0 .. E_{band_max}, strictly decreasing.
std::vector<chain_solution> band_sequence(int kappa, int band_max, double tol = 1e-12);

// Least-squares fit of log(E_{2n} - 2 cos(pi/kappa)) against log(n).
struct rate_fit_result {
    double slope = 0;
    double intercept = 0;
    double residual_norm = 0;
    std::vector<double> log_n;
    std::vector<double> log_gap;
};

rate_fit_result rate_fit(int kappa, const std::vector<long>& indices);

}  // namespace tlab
