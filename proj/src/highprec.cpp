#include "thresholdlab/highprec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thresholdlab/band_solver.hpp"

namespace tlab {

namespace {

bigfloat guarded_residual(const branch_ctx<bigfloat>& ctx, int band, const bigfloat& energy) {
    try {
        return detail::closure_residual_impl(ctx, band, energy);
    } catch (const out_of_branch&) {
        return bigfloat(1);
    }
}

bigfloat poly_eval(const std::vector<bigint>& coeffs, const bigfloat& x) {
    bigfloat acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + bigfloat(*it);
    return acc;
}

void make_primitive(std::vector<bigint>& coeffs) {
    bigint g = 0;
    for (const bigint& c : coeffs) g = gcd(g, c);
    if (g > 1)
        for (bigint& c : coeffs) c /= g;
    if (coeffs.back() < 0)
        for (bigint& c : coeffs) c = -c;
}

int bit_length(const bigint& v) {
    return v == 0 ? 0 : static_cast<int>(msb(abs(v))) + 1;
}

}  // namespace

int digits_for_bits(int bits) {
    return static_cast<int>(bits * 0.3010299956639812) + 12;
}

bigfloat refine_endpoint(int kappa, int band, int bits) {
    if (bits < 64) throw std::invalid_argument("refine_endpoint: bits must be >= 64");
    if (band < 0) throw std::invalid_argument("refine_endpoint: negative band");
    bigfloat::default_precision(digits_for_bits(bits + 64));
    const auto ctx = make_branch_ctx<bigfloat>(kappa);
    if (band == 0) return ctx.window_upper;

    const double seed = solve_band_endpoint(kappa, band).energy;
    bigfloat lo = bigfloat(seed) - bigfloat(1e-9);
    bigfloat hi = bigfloat(seed) + bigfloat(1e-9);
    if (lo < ctx.window_lower) lo = ctx.window_lower;
    for (int widen = 0;; ++widen) {
        if (guarded_residual(ctx, band, lo) < 0 && guarded_residual(ctx, band, hi) >= 0) break;
        if (widen >= 24)
            throw non_convergence("refine_endpoint: could not bracket the seed root");
        const bigfloat w = hi - lo;
        lo -= w;
        hi += w;
        if (lo < ctx.window_lower) lo = ctx.window_lower;
        if (hi > ctx.window_upper) hi = ctx.window_upper;
    }
    for (int it = 0; it < bits + 48; ++it) {
        const bigfloat mid = (lo + hi) / 2;
        if (guarded_residual(ctx, band, mid) < 0)
            lo = mid;
        else
            hi = mid;
    }
    const bigfloat root = (lo + hi) / 2;
    if (abs(guarded_residual(ctx, band, root)) > ldexp(bigfloat(1), -bits + 8))
        throw non_convergence("refine_endpoint: residual did not reach the target");
    if (abs(root - seed) > 1e-9)
        throw non_convergence("refine_endpoint: refined root disagrees with the seed");
    return root;
}

min_poly_result find_min_poly(const bigfloat& value, int max_degree, int bits) {
    if (max_degree < 1) throw std::invalid_argument("find_min_poly: max_degree must be >= 1");
    if (bits < 64) throw std::invalid_argument("find_min_poly: bits must be >= 64");

    std::vector<bigfloat> powers(max_degree + 1);
    powers[0] = 1;
    for (int i = 1; i <= max_degree; ++i) powers[i] = powers[i - 1] * value;
    const bigfloat scale = ldexp(bigfloat(1), bits);

    for (int degree = 1; degree <= max_degree; ++degree) {
        std::vector<std::vector<bigint>> basis(degree + 1, std::vector<bigint>(degree + 2, 0));
        for (int i = 0; i <= degree; ++i) {
            basis[i][i] = 1;
            basis[i][degree + 1] = static_cast<bigint>(round(scale * powers[i]));
        }
        lll_reduce(basis);

        // A genuine relation is anomalously short for this lattice: noise
        // vectors carry ~bits/(degree+1) coefficient bits, so demand a
        // 16-bit margin under that floor plus a residual collapse.
        const int coeff_bit_cap = bits / (degree + 1) - 16;
        min_poly_result best;
        bool found = false;
        bigint best_norm2 = 0;
        for (const auto& row : basis) {
            std::vector<bigint> cand(row.begin(), row.begin() + degree + 1);
            if (cand.back() == 0) continue;
            int max_bits = 0;
            bigint norm2 = 0;
            bigint max_abs = 0;
            for (const bigint& c : cand) {
                max_bits = std::max(max_bits, bit_length(c));
                norm2 += c * c;
                if (abs(c) > max_abs) max_abs = abs(c);
            }
            if (max_bits > coeff_bit_cap) continue;
            make_primitive(cand);
            const bigfloat residual = abs(poly_eval(cand, value));
            const bigfloat bound = ldexp(bigfloat(1) + bigfloat(max_abs), -bits / 2);
            if (residual >= bound) continue;
            if (!found || norm2 < best_norm2) {
                best.coefficients = cand;
                best.degree = degree;
                best.residual = static_cast<double>(residual);
                best_norm2 = norm2;
                found = true;
            }
        }
        if (found) return best;
    }
    throw no_relation("find_min_poly: no relation up to degree " + std::to_string(max_degree));
}

bigfloat verify_poly_root(const std::vector<quad_coeff>& coeffs, const bigfloat& value) {
    bigfloat::default_precision(value.precision());
    const bigfloat root2 = sqrt(bigfloat(2));
    bigfloat acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        const bigfloat c = bigfloat(numerator(it->a)) / bigfloat(denominator(it->a)) +
                           root2 * bigfloat(numerator(it->b)) / bigfloat(denominator(it->b));
        acc = acc * value + c;
    }
    return abs(acc);
}

bigfloat verify_poly_root(const std::vector<bigint>& coeffs, const bigfloat& value) {
    bigfloat::default_precision(value.precision());
    return abs(poly_eval(coeffs, value));
}

bool has_rational_root(const std::vector<bigint>& coeffs) {
    if (coeffs.empty()) return false;
    if (coeffs.front() == 0) return true;  // root at zero
    const auto divisors = [](bigint v) {
        v = abs(v);
        std::vector<bigint> out;
        for (bigint d = 1; d * d <= v; ++d) {
            if (v % d == 0) {
                out.push_back(d);
                out.push_back(v / d);
            }
        }
        return out;
    };
    const auto eval_rat = [&](const bigrat& x) {
        bigrat acc(0);
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + bigrat(*it);
        return acc;
    };
    for (const bigint& p : divisors(coeffs.front())) {
        for (const bigint& q : divisors(coeffs.back())) {
            const bigrat r(p, q);
            if (eval_rat(r) == 0 || eval_rat(-r) == 0) return true;
        }
    }
    return false;
}

}  // namespace tlab
