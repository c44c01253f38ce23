#include "dlpls/shrinkage.hpp"

#include "dlpls/errors.hpp"
#include "dlpls/pls.hpp"

#include <cmath>
#include <limits>

namespace dlpls {

namespace {

constexpr double kAlphaCutoff = 1e-12;
constexpr double kLambdaLo = 1e-10;
constexpr double kLambdaHi = 1e10;
constexpr int kBisectionMax = 200;

Matrix moment_matrix(const StandardizedMatrix& x) {
    return x.values.transpose() * x.values / static_cast<double>(x.n() - 1);
}

Vector moment_cross(const StandardizedMatrix& x, const Vector& y) {
    return x.values.transpose() * y / static_cast<double>(x.n() - 1);
}

Vector ridge_beta_moment(const Matrix& v, const Vector& s_xy, double lambda) {
    Matrix sys = v;
    sys.diagonal().array() += lambda;
    return sys.ldlt().solve(s_xy);
}

Vector method_beta(ShrinkageMethod method, const StandardizedMatrix& x, const Vector& y,
                   const ShrinkageParams& params, const EigenSpectrum& spectrum,
                   const Vector& alpha) {
    switch (method) {
        case ShrinkageMethod::Ridge:
            return ridge_beta_moment(moment_matrix(x), moment_cross(x, y), params.lambda);
        case ShrinkageMethod::Pcr: {
            if (params.components < 0 || params.components > x.cols()) {
                throw data_error("scale_factors: PCR component count out of range");
            }
            Vector beta = Vector::Zero(x.cols());
            for (Index j = 0; j < params.components; ++j) {
                beta += alpha(j) * spectrum.eigenvectors.col(j);
            }
            return beta;
        }
        case ShrinkageMethod::Pls:
            return helland_beta(x, y, params.components).beta;
    }
    throw data_error("scale_factors: unknown method");
}

} // namespace

std::string shrinkage_method_name(ShrinkageMethod m) {
    switch (m) {
        case ShrinkageMethod::Ridge: return "RR";
        case ShrinkageMethod::Pcr: return "PCR";
        case ShrinkageMethod::Pls: return "PLS";
    }
    return "?";
}

Vector alpha_ols(const StandardizedMatrix& x, const Vector& y) {
    if (y.size() != x.n()) throw data_error("alpha_ols: y length mismatch");
    const Vector beta = ols(x.values, Matrix(y)).col(0);
    const EigenSpectrum spectrum = sym_eigen(moment_matrix(x));
    return spectrum.eigenvectors.transpose() * beta;
}

FactorResult scale_factors(ShrinkageMethod method, const StandardizedMatrix& x,
                           const Vector& y, const ShrinkageParams& params) {
    const Index p = x.cols();
    const EigenSpectrum spectrum = sym_eigen(moment_matrix(x));
    const Vector beta_ls = ols(x.values, Matrix(y)).col(0);
    const Vector alpha = spectrum.eigenvectors.transpose() * beta_ls;

    FactorResult out;
    out.indeterminate.assign(static_cast<std::size_t>(p), 0);
    out.beta = method_beta(method, x, y, params, spectrum, alpha);

    if (method == ShrinkageMethod::Pcr) {
        out.f = Vector::Zero(p);
        out.f.head(params.components).setOnes();
        return out;
    }

    out.f.resize(p);
    for (Index j = 0; j < p; ++j) {
        if (std::abs(alpha(j)) < kAlphaCutoff) {
            out.f(j) = 1.0;  // identity is vacuous on this direction
            out.indeterminate[static_cast<std::size_t>(j)] = 1;
        } else {
            out.f(j) = spectrum.eigenvectors.col(j).dot(out.beta) / alpha(j);
        }
    }
    return out;
}

NormalizationRecord normalize_overall_shrinkage(const StandardizedMatrix& x, const Vector& y,
                                                ShrinkageMethod reference,
                                                const ShrinkageParams& ref_params) {
    const Matrix v = moment_matrix(x);
    const Vector s_xy = moment_cross(x, y);
    const EigenSpectrum spectrum = sym_eigen(v);
    const Vector beta_ls = ols(x.values, Matrix(y)).col(0);
    const Vector alpha = spectrum.eigenvectors.transpose() * beta_ls;

    NormalizationRecord rec;
    rec.reference_norm =
        method_beta(reference, x, y, ref_params, spectrum, alpha).norm();

    // PCR: discrete nearest match over L = 0..p, ties to the smaller count.
    const Index p = x.cols();
    double best_gap = std::numeric_limits<double>::infinity();
    double norm_sq = 0.0;
    for (Index L = 0; L <= p; ++L) {
        if (L > 0) norm_sq += alpha(L - 1) * alpha(L - 1);
        const double gap = std::abs(std::sqrt(norm_sq) - rec.reference_norm);
        if (gap < best_gap) {
            best_gap = gap;
            rec.pcr_components = L;
            rec.pcr_norm = std::sqrt(norm_sq);
        }
    }

    // Ridge: |beta_RR(lambda)| decreases monotonically in lambda.
    if (rec.reference_norm == 0.0) {
        rec.lambda = std::numeric_limits<double>::infinity();
        rec.ridge_norm = 0.0;
        return rec;
    }
    const double norm_lo = ridge_beta_moment(v, s_xy, kLambdaLo).norm();
    if (rec.reference_norm >= norm_lo) {
        // Cannot reach by shrinking; lambda pinned at the no-shrinkage end.
        rec.lambda = 0.0;
        rec.ridge_norm = beta_ls.norm();
        rec.at_boundary = rec.reference_norm > norm_lo * (1.0 + 1e-9);
        return rec;
    }
    double lo = std::log(kLambdaLo);
    double hi = std::log(kLambdaHi);
    for (int it = 0; it < kBisectionMax; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double norm_mid = ridge_beta_moment(v, s_xy, std::exp(mid)).norm();
        if (norm_mid > rec.reference_norm) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    rec.lambda = std::exp(0.5 * (lo + hi));
    rec.ridge_norm = ridge_beta_moment(v, s_xy, rec.lambda).norm();
    return rec;
}

PcrSequence pcr_fit_sequence(const StandardizedMatrix& x, const Vector& y_raw, Index L) {
    const Index n = x.n();
    const Index p = x.cols();
    if (y_raw.size() != n) throw data_error("pcr_fit_sequence: y length mismatch");
    if (L < 0 || L > p) throw data_error("pcr_fit_sequence: L out of range");

    const EigenSpectrum spectrum = sym_eigen(moment_matrix(x));
    const double y_mean = y_raw.mean();
    const Vector y_centered = y_raw.array() - y_mean;

    PcrSequence seq;
    seq.fitted.resize(n, L + 1);
    seq.fitted.col(0).setConstant(y_mean);
    seq.coefficients = Matrix::Zero(p, L);
    seq.score_coefficients.resize(L);

    Vector beta = Vector::Zero(p);
    for (Index l = 0; l < L; ++l) {
        const Vector score = x.values * spectrum.eigenvectors.col(l);
        const double ss = score.squaredNorm();
        const double gamma = ss > 0.0 ? score.dot(y_centered) / ss : 0.0;
        seq.score_coefficients(l) = gamma;
        beta += gamma * spectrum.eigenvectors.col(l);
        seq.coefficients.col(l) = beta;
        seq.fitted.col(l + 1) = seq.fitted.col(l) + gamma * score;
    }
    return seq;
}

Matrix dropout_ridge(const Matrix& x, const Matrix& y, double p_keep) {
    if (!(p_keep > 0.0 && p_keep < 1.0)) {
        throw data_error("dropout_ridge: keep probability must lie strictly in (0, 1)");
    }
    const Vector gamma = (x.transpose() * x).diagonal().cwiseSqrt();
    return ridge(p_keep * x, y, p_keep * (1.0 - p_keep), gamma);
}

double dropout_objective(const Matrix& x, const Matrix& y, const Matrix& w, double p_keep) {
    const Vector gamma2 = (x.transpose() * x).diagonal();
    const double fit = (y - p_keep * x * w).squaredNorm();
    double penalty = 0.0;
    for (Index j = 0; j < w.rows(); ++j) penalty += gamma2(j) * w.row(j).squaredNorm();
    return fit + p_keep * (1.0 - p_keep) * penalty;
}

} // namespace dlpls
