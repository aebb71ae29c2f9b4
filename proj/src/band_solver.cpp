#include "thresholdlab/band_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/roots.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace tlab {

namespace {

// Extended-precision scalar for the deep-band sweeps; ~133-bit mantissa.
using xreal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<40>,
                                            boost::multiprecision::et_off>;

constexpr int kScanIntervals = 4096;

double guarded_residual(const branch_ctx<double>& ctx, int band, double energy) {
    try {
        return detail::closure_residual_impl(ctx, band, energy);
    } catch (const out_of_branch&) {
        // The chain escapes above x = 1 only on the high-energy side of the
        // root, so an undefined residual counts as positive.
        return std::numeric_limits<double>::infinity();
    }
}

chain_solution assemble_solution(const branch_ctx<double>& ctx, int band, double energy) {
    chain_solution sol;
    sol.kappa = ctx.kappa;
    sol.band = band;
    sol.energy = energy;
    sol.points.resize(band + 2);
    const int half = (band + 2) / 2;
    double x = energy - 1;
    sol.points[0] = x;
    for (int i = 1; i <= half; ++i) {
        x = branch_step(ctx, energy, x);
        sol.points[i] = x;
    }
    for (int i = half + 1; i <= band + 1; ++i) sol.points[i] = energy - sol.points[band + 1 - i];
    return sol;
}

bool strictly_increasing(const std::vector<double>& xs) {
    for (size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) return false;
    return true;
}

double bisect_residual(const branch_ctx<double>& ctx, int band, double lo, double hi) {
    // invariant: residual(lo) < 0 <= residual(hi) (hi may be in the escaped region)
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (guarded_residual(ctx, band, mid) < 0)
            lo = mid;
        else
            hi = mid;
    }
    // land on whichever bracket edge annihilates the residual better
    const double rl = std::abs(guarded_residual(ctx, band, lo));
    const double rh = std::abs(guarded_residual(ctx, band, hi));
    return rh < rl ? hi : lo;
}

chain_solution solve_scan(const branch_ctx<double>& ctx, int band, double tol, double upper_limit) {
    const double lo = ctx.window_lower;
    const double hi = std::min(ctx.window_upper, upper_limit);
    std::vector<chain_solution> candidates;
    double prev_e = lo;
    double prev_r = guarded_residual(ctx, band, lo);
    for (int i = 1; i <= kScanIntervals; ++i) {
        const double e = lo + (hi - lo) * i / kScanIntervals;
        const double r = guarded_residual(ctx, band, e);
        if (prev_r < 0 && r >= 0) {
            const double root = bisect_residual(ctx, band, prev_e, e);
            const double res = guarded_residual(ctx, band, root);
            const double floor = 32 * std::numeric_limits<double>::epsilon() * (band + 2);
            if (std::abs(res) <= std::max(tol, floor)) {
                chain_solution sol = assemble_solution(ctx, band, root);
                if (strictly_increasing(sol.points)) candidates.push_back(std::move(sol));
            }
        }
        prev_e = e;
        prev_r = r;
    }
    if (candidates.empty())
        throw no_root("no closure root found for kappa=" + std::to_string(ctx.kappa) +
                      ", band=" + std::to_string(band));
    // The residual is monotone in E in practice, so this is the unique root;
    // if several brackets survive, keep the highest energy below the limit.
    return *std::max_element(candidates.begin(), candidates.end(),
                             [](const auto& a, const auto& b) { return a.energy < b.energy; });
}

// Deep bands: no scan (adjacent roots are closer than any fixed grid), just
// bracketed root finding on the monotone residual in extended precision.
xreal solve_deep_band(const branch_ctx<xreal>& ctx, int band, xreal hint_upper) {
    const xreal lo = ctx.window_lower;
    auto residual = [&](const xreal& e) -> xreal {
        try {
            return detail::closure_residual_impl(ctx, band, e);
        } catch (const out_of_branch&) {
            return xreal(1);
        }
    };
    xreal hi = hint_upper;
    for (int guard = 0; guard < 128 && !(residual(hi) > 0); ++guard)
        hi = lo + (hi - lo) * xreal(0.5);
    boost::math::tools::eps_tolerance<xreal> stop(110);
    std::uintmax_t max_iter = 400;
    auto bracket = boost::math::tools::toms748_solve(residual, lo, hi, stop, max_iter);
    return (bracket.first + bracket.second) / 2;
}

}  // namespace

band_window make_band_window(int kappa) {
    const auto ctx = make_branch_ctx<double>(kappa);
    return band_window{kappa, ctx.window_lower, ctx.window_upper};
}

std::vector<double> chain_points(int kappa, int band, double energy) {
    if (band < 0) throw std::invalid_argument("chain_points: negative band");
    const auto ctx = make_branch_ctx<double>(kappa);
    const int half = (band + 2) / 2;
    std::vector<double> xs;
    xs.reserve(half + 1);
    xs.push_back(energy - 1);
    for (int i = 0; i < half; ++i) xs.push_back(branch_step(ctx, energy, xs.back()));
    return xs;
}

double closure_residual(int kappa, int band, double energy) {
    const auto xs = chain_points(kappa, band, energy);
    if (band % 2 == 1) return xs[(band + 1) / 2] - energy / 2;
    const auto ctx = make_branch_ctx<double>(kappa);
    return xs[band / 2] - ctx.fold_point;
}

chain_solution solve_band_endpoint(int kappa, int band, double tol) {
    if (band < 0) throw std::invalid_argument("solve_band_endpoint: negative band");
    if (!(tol > 0)) throw std::invalid_argument("solve_band_endpoint: tol must be positive");
    const auto ctx = make_branch_ctx<double>(kappa);
    if (band == 0) {
        chain_solution sol;
        sol.kappa = kappa;
        sol.band = 0;
        sol.energy = ctx.window_upper;
        sol.points = {ctx.window_upper - 1, 1.0};
        return sol;
    }
    return solve_scan(ctx, band, tol, ctx.window_upper);
}

std::vector<chain_solution> band_sequence(int kappa, int band_max, double tol) {
    if (band_max < 0) throw std::invalid_argument("band_sequence: negative band_max");
    const auto ctx = make_branch_ctx<double>(kappa);
    std::vector<chain_solution> out;
    out.reserve(band_max + 1);
    for (int n = 0; n <= band_max; ++n) {
        if (n == 0) {
            out.push_back(solve_band_endpoint(kappa, 0, tol));
        } else {
            out.push_back(solve_scan(ctx, n, tol, out.back().energy));
            if (!(out[n].energy < out[n - 1].energy))
                throw no_root("band sequence not strictly decreasing at band " + std::to_string(n));
        }
    }
    return out;
}

rate_fit_result rate_fit(int kappa, const std::vector<long>& indices) {
    if (indices.empty()) throw degenerate_input("rate_fit: empty index list");
    for (long n : indices)
        if (n < 1) throw degenerate_input("rate_fit: indices must be >= 1");

    std::vector<long> sorted = indices;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    const auto ctx = make_branch_ctx<xreal>(kappa);
    rate_fit_result fit;
    xreal upper = ctx.window_upper;
    for (long n : sorted) {
        const int band = static_cast<int>(2 * n);
        const xreal e = solve_deep_band(ctx, band, upper);
        const xreal gap = e - ctx.window_lower;
        if (!(gap > 0))
            throw degenerate_input("rate_fit: non-positive gap at n=" + std::to_string(n));
        fit.log_n.push_back(std::log(static_cast<double>(n)));
        fit.log_gap.push_back(static_cast<double>(log(gap)));
        upper = e;
    }

    const size_t m = fit.log_n.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < m; ++i) {
        sx += fit.log_n[i];
        sy += fit.log_gap[i];
        sxx += fit.log_n[i] * fit.log_n[i];
        sxy += fit.log_n[i] * fit.log_gap[i];
    }
    const double denom = m * sxx - sx * sx;
    if (m < 2 || denom == 0) {
        // A single point fixes the intercept only.
        fit.slope = 0;
        fit.intercept = m ? fit.log_gap[0] : 0;
        return fit;
    }
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / m;
    double ss = 0;
    for (size_t i = 0; i < m; ++i) {
        const double r = fit.log_gap[i] - (fit.slope * fit.log_n[i] + fit.intercept);
        ss += r * r;
    }
    fit.residual_norm = std::sqrt(ss);
    return fit;
}

}  // namespace tlab
