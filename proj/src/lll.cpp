#include "thresholdlab/lll.hpp"

#include <stdexcept>
#include <utility>

#include "thresholdlab/errors.hpp"

namespace tlab {

namespace {

bigint dot(const std::vector<bigint>& a, const std::vector<bigint>& b) {
    bigint s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bigint floor_div(const bigint& a, const bigint& b) {
    bigint q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Nearest integer to a/b, b > 0.
bigint round_div(const bigint& a, const bigint& b) {
    return floor_div(2 * a + b, 2 * b);
}

}  // namespace

// Integral LLL with exact Gram bookkeeping: d[k] are the Gram determinants,
// lambda[k][j] = mu_{k,j} * d[j]; all the divisions below are exact.
void lll_reduce(std::vector<std::vector<bigint>>& basis) {
    const int n = static_cast<int>(basis.size());
    if (n < 2) return;

    // 1-based to keep the classical index arithmetic readable
    std::vector<std::vector<bigint>> b(n + 1);
    for (int i = 1; i <= n; ++i) b[i] = basis[i - 1];
    std::vector<bigint> d(n + 1);
    std::vector<std::vector<bigint>> lambda(n + 1, std::vector<bigint>(n + 1));
    d[0] = 1;
    d[1] = dot(b[1], b[1]);

    const auto gram_row = [&](int k) {
        for (int j = 1; j <= k; ++j) {
            bigint u = dot(b[k], b[j]);
            for (int i = 1; i < j; ++i) u = (d[i] * u - lambda[k][i] * lambda[j][i]) / d[i - 1];
            if (j < k)
                lambda[k][j] = u;
            else
                d[k] = u;
        }
        if (d[k] == 0) throw error("lll_reduce: dependent basis vectors");
    };

    const auto size_reduce = [&](int k, int l) {
        if (2 * abs(lambda[k][l]) > d[l]) {
            const bigint q = round_div(lambda[k][l], d[l]);
            for (size_t c = 0; c < b[k].size(); ++c) b[k][c] -= q * b[l][c];
            lambda[k][l] -= q * d[l];
            for (int i = 1; i < l; ++i) lambda[k][i] -= q * lambda[l][i];
        }
    };

    int k = 2;
    int k_max = 1;
    while (k <= n) {
        if (k > k_max) {
            k_max = k;
            gram_row(k);
        }
        while (true) {
            size_reduce(k, k - 1);
            const bigint lam = lambda[k][k - 1];
            if (4 * d[k] * d[k - 2] < 3 * d[k - 1] * d[k - 1] - 4 * lam * lam) {
                std::swap(b[k], b[k - 1]);
                for (int j = 1; j <= k - 2; ++j) std::swap(lambda[k][j], lambda[k - 1][j]);
                const bigint big_b = (d[k - 2] * d[k] + lam * lam) / d[k - 1];
                for (int i = k + 1; i <= k_max; ++i) {
                    const bigint t = lambda[i][k];
                    lambda[i][k] = (d[k] * lambda[i][k - 1] - lam * t) / d[k - 1];
                    lambda[i][k - 1] = (big_b * t + lam * lambda[i][k]) / d[k];
                }
                d[k - 1] = big_b;
                k = (k - 1 > 2) ? k - 1 : 2;
            } else {
                break;
            }
        }
        for (int l = k - 2; l >= 1; --l) size_reduce(k, l);
        ++k;
    }

    for (int i = 1; i <= n; ++i) basis[i - 1] = std::move(b[i]);
}

}  // namespace tlab
