#include "dlpls/linalg.hpp"

#include "dlpls/errors.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

namespace dlpls {

namespace {

// Flip column signs so the largest-|entry| of each `right` column is positive;
// `left` follows so the product is unchanged. Ties resolve to the lowest row.
void fix_signs(Matrix& left, Matrix& right) {
    for (Index j = 0; j < right.cols(); ++j) {
        Index at = 0;
        right.col(j).cwiseAbs().maxCoeff(&at);
        if (right(at, j) < 0.0) {
            right.col(j) = -right.col(j);
            if (j < left.cols()) left.col(j) = -left.col(j);
        }
    }
}

} // namespace

SvdResult svd(const Matrix& a) {
    if (!a.allFinite()) throw data_error("svd: non-finite entries in input");
    Eigen::BDCSVD<Matrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (dec.info() != Eigen::Success) {
        throw numeric_error("svd: did not converge (n=" + std::to_string(a.rows()) +
                            ", m=" + std::to_string(a.cols()) +
                            ", |A|_F=" + std::to_string(a.norm()) + ")");
    }
    SvdResult out;
    out.left = dec.matrixU();
    out.singular_values = dec.singularValues();
    out.right = dec.matrixV();
    fix_signs(out.left, out.right);
    return out;
}

Matrix truncated_approx(const SvdResult& s, Index L) {
    const Index r = s.singular_values.size();
    if (L < 1 || L > r) {
        throw data_error("truncated_approx: L=" + std::to_string(L) +
                         " out of range [1, " + std::to_string(r) + "]");
    }
    return s.left.leftCols(L) * s.singular_values.head(L).asDiagonal() *
           s.right.leftCols(L).transpose();
}

Index numerical_rank(const SvdResult& s, Index n, Index m) {
    if (s.singular_values.size() == 0) return 0;
    const double cutoff =
        static_cast<double>(std::max(n, m)) * s.singular_values(0) * 1e-12;
    Index rank = 0;
    for (Index j = 0; j < s.singular_values.size(); ++j) {
        if (s.singular_values(j) > cutoff) ++rank;
    }
    return rank;
}

LeastSquares ols_full(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows()) {
        throw data_error("ols: row mismatch, X has " + std::to_string(x.rows()) +
                         " rows, Y has " + std::to_string(y.rows()));
    }
    const SvdResult dec = svd(x);
    const Index rank = numerical_rank(dec, x.rows(), x.cols());
    Matrix uty = dec.left.leftCols(rank).transpose() * y;
    for (Index j = 0; j < rank; ++j) uty.row(j) /= dec.singular_values(j);
    LeastSquares out;
    out.coefficients = dec.right.leftCols(rank) * uty;
    out.rank = rank;
    return out;
}

Matrix ridge(const Matrix& x, const Matrix& y, double lambda, const Vector& gamma_diag) {
    if (lambda < 0.0) throw data_error("ridge: lambda must be nonnegative");
    if (gamma_diag.size() != 0 && gamma_diag.size() != x.cols()) {
        throw data_error("ridge: gamma has " + std::to_string(gamma_diag.size()) +
                         " entries for " + std::to_string(x.cols()) + " columns");
    }
    if (lambda == 0.0) return ols(x, y);

    Matrix gram = x.transpose() * x;
    if (gamma_diag.size() == 0) {
        gram.diagonal().array() += lambda;
    } else {
        gram.diagonal() += lambda * gamma_diag.cwiseProduct(gamma_diag);
    }
    Eigen::LDLT<Matrix> fac(gram);
    if (fac.info() != Eigen::Success) {
        throw numeric_error("ridge: penalized normal equations not factorizable");
    }
    return fac.solve(x.transpose() * y);
}

EigenSpectrum sym_eigen(const Matrix& v) {
    if (v.rows() != v.cols()) throw data_error("sym_eigen: matrix must be square");
    const Matrix sym = 0.5 * (v + v.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> dec(sym);
    if (dec.info() != Eigen::Success) throw numeric_error("sym_eigen: no convergence");

    // SelfAdjointEigenSolver sorts ascending; reverse to descending.
    const Index p = v.rows();
    EigenSpectrum out;
    out.eigenvalues = dec.eigenvalues().reverse();
    out.eigenvectors = dec.eigenvectors().rowwise().reverse();
    Matrix dummy(0, p);
    fix_signs(dummy, out.eigenvectors);
    return out;
}

} // namespace dlpls
