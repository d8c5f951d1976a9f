#include "ecagr/detail/ldlt.hpp"

#include <cmath>

namespace ecagr::detail {

LdltResult ldlt_factor(const SymmetricMatrix& A) {
    const std::size_t n = A.n;
    LdltResult f;
    f.lower.assign(n * n, 0.0);
    f.diag.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) f.lower[i * n + i] = 1.0;

    for (std::size_t j = 0; j < n; ++j) {
        double dj = A.at(j, j);
        for (std::size_t k = 0; k < j; ++k) {
            const double ljk = f.lower[j * n + k];
            dj -= ljk * ljk * f.diag[k];
        }
        // a positive semidefinite normal matrix loses definiteness exactly
        // when a column is linearly dependent on the previous ones
        if (!(dj > 0.0) || !std::isfinite(dj)) {
            f.ok = false;
            f.failed_column = j;
            return f;
        }
        f.diag[j] = dj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = A.at(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                v -= f.lower[i * n + k] * f.lower[j * n + k] * f.diag[k];
            }
            f.lower[i * n + j] = v / dj;
        }
    }
    f.ok = true;
    return f;
}

std::vector<double> ldlt_solve(const LdltResult& f, const std::vector<double>& b) {
    const std::size_t n = f.diag.size();
    std::vector<double> x = b;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) x[i] -= f.lower[i * n + k] * x[k];
    }
    for (std::size_t i = 0; i < n; ++i) x[i] /= f.diag[i];
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t k = ii + 1; k < n; ++k) {
            x[ii] -= f.lower[k * n + ii] * x[k];
        }
    }
    return x;
}

std::vector<std::vector<double>> ldlt_inverse(const LdltResult& f) {
    const std::size_t n = f.diag.size();
    std::vector<std::vector<double>> inv(n);
    std::vector<double> e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        inv[j] = ldlt_solve(f, e);
        e[j] = 0.0;
    }
    // columns of the inverse; symmetric, so rows work the same way
    return inv;
}

double rcond_estimate(const SymmetricMatrix& A, const LdltResult& f) {
    const std::size_t n = A.n;
    double norm_a = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < n; ++i) col += std::fabs(A.at(i, j));
        norm_a = std::max(norm_a, col);
    }
    const auto inv = ldlt_inverse(f);
    double norm_inv = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < n; ++i) col += std::fabs(inv[j][i]);
        norm_inv = std::max(norm_inv, col);
    }
    if (norm_a <= 0.0 || norm_inv <= 0.0) return 0.0;
    return 1.0 / (norm_a * norm_inv);
}

} // namespace ecagr::detail
