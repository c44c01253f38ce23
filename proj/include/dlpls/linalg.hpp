#pragma once

#include <Eigen/Dense>

namespace dlpls {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Thin SVD, A = left * diag(singular_values) * right^T.
///
/// Singular values are nonincreasing. Columns of `right` carry a fixed sign
/// convention (largest-magnitude entry positive) so decompositions are
/// reproducible; `left` columns are flipped in tandem.
struct SvdResult {
    Matrix left;             // n x r, orthonormal columns
    Vector singular_values;  // r, nonincreasing, nonnegative
    Matrix right;            // m x r, orthonormal columns
};

/// Eigen-decomposition of a symmetric matrix, eigenvalues nonincreasing,
/// eigenvector columns orthonormal with the same sign convention as SvdResult.
struct EigenSpectrum {
    Vector eigenvalues;
    Matrix eigenvectors;  // column j pairs with eigenvalues[j]
};

SvdResult svd(const Matrix& a);

/// Best rank-L reconstruction from a computed SVD. 1 <= L <= r.
Matrix truncated_approx(const SvdResult& s, Index L);

/// Relative cutoff used for numerical rank: s_j < max(n,m) * s_1 * 1e-12.
Index numerical_rank(const SvdResult& s, Index n, Index m);

struct LeastSquares {
    Matrix coefficients;  // p x q
    Index rank;           // numerical rank of the design
};

/// Minimum-norm least squares via SVD pseudo-inverse.
LeastSquares ols_full(const Matrix& x, const Matrix& y);

inline Matrix ols(const Matrix& x, const Matrix& y) { return ols_full(x, y).coefficients; }

/// Solves (X^T X + lambda * Gamma^T Gamma) beta = X^T Y with diagonal Gamma.
/// Empty `gamma_diag` means the identity. lambda = 0 falls back to the
/// pseudo-inverse path.
Matrix ridge(const Matrix& x, const Matrix& y, double lambda,
             const Vector& gamma_diag = Vector());

EigenSpectrum sym_eigen(const Matrix& v);

} // namespace dlpls
