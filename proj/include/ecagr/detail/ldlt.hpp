#pragma once

#include <cstddef>
#include <vector>

namespace ecagr::detail {

/// Dense symmetric matrix in row-major storage, plus the LDL^T machinery the
/// regression paths share. Sized for the tiny systems this toolkit solves
/// (p <= 8); no pivoting, definiteness is checked during factorization.
struct SymmetricMatrix {
    std::size_t n = 0;
    std::vector<double> a; // row-major n*n

    explicit SymmetricMatrix(std::size_t size) : n(size), a(size * size, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct LdltResult {
    bool ok = false;
    std::size_t failed_column = 0;     // column where the pivot collapsed
    std::vector<double> lower;         // unit lower triangle, row-major
    std::vector<double> diag;          // D
};

/// Factor A = L D L^T without square roots, so a 1x1 system solves as b/A
/// with no intermediate rounding.
LdltResult ldlt_factor(const SymmetricMatrix& A);

/// Solves A x = b given a successful factorization.
std::vector<double> ldlt_solve(const LdltResult& f, const std::vector<double>& b);

/// Inverse via n solves; only called for the small covariance matrices.
std::vector<std::vector<double>> ldlt_inverse(const LdltResult& f);

/// 1-norm reciprocal condition estimate: 1 / (||A||_1 * ||A^-1||_1).
double rcond_estimate(const SymmetricMatrix& A, const LdltResult& f);

} // namespace ecagr::detail
