#pragma once

#include "dlpls/dataset.hpp"
#include "dlpls/linalg.hpp"

#include <string>
#include <vector>

namespace dlpls {

/// Shrinkage estimators compared in the eigen-basis of V = X^T X / (n-1).
enum class ShrinkageMethod { Ridge, Pcr, Pls };

std::string shrinkage_method_name(ShrinkageMethod m);

struct ShrinkageParams {
    double lambda = 0.0;   // Ridge penalty, on the scale of the V eigenvalues
    Index components = 0;  // PCR truncation / PLS component count
};

/// OLS coefficients rotated into the eigen-basis: alpha_j = v_j^T beta_OLS.
Vector alpha_ols(const StandardizedMatrix& x, const Vector& y);

struct FactorResult {
    Vector f;                                  // per-direction scale factor
    std::vector<std::uint8_t> indeterminate;  // |alpha_j| below cutoff, f fixed to 1
    Vector beta;                               // the method's coefficients (standardized scale)
};

/// Per-direction scale factors f_j = (v_j^T beta_method) / alpha_j, so that
/// beta_method = sum_j f_j alpha_j v_j. PCR factors are exact 0/1 by
/// construction; Ridge and PLS factors are the numeric ratio.
FactorResult scale_factors(ShrinkageMethod method, const StandardizedMatrix& x,
                           const Vector& y, const ShrinkageParams& params);

struct NormalizationRecord {
    double lambda = 0.0;        // Ridge penalty matching the reference norm
    Index pcr_components = 0;   // PCR count with the nearest norm
    double reference_norm = 0.0;
    double ridge_norm = 0.0;    // achieved |beta_RR(lambda)|
    double pcr_norm = 0.0;      // achieved |beta_PCR(L)|
    bool at_boundary = false;   // reference norm not reachable by shrinking
};

/// Matches the overall shrinkage of Ridge and PCR to a reference estimator:
/// lambda is solved by bisection so |beta_RR(lambda)| equals the reference
/// coefficient norm; the PCR count is the discrete nearest match.
NormalizationRecord normalize_overall_shrinkage(const StandardizedMatrix& x, const Vector& y,
                                                ShrinkageMethod reference,
                                                const ShrinkageParams& ref_params);

struct PcrSequence {
    Matrix fitted;              // n x (L+1), column l = fit with l components
    Matrix coefficients;        // p x L, slope vectors on the standardized-X scale
    Vector score_coefficients;  // per-component regression coefficients
};

/// Principal-component regression of raw-unit y on standardized X, grown one
/// component at a time. Column 0 of `fitted` is the overall mean.
PcrSequence pcr_fit_sequence(const StandardizedMatrix& x, const Vector& y_raw, Index L);

/// Exact minimizer of the Bernoulli-marginalized dropout objective,
/// a ridge problem with penalty (1-p)/p on the diag(X^T X) metric.
Matrix dropout_ridge(const Matrix& x, const Matrix& y, double p_keep);

/// The marginalized objective |Y - p X W|^2 + p(1-p) |Gamma W|^2 with
/// Gamma = diag(X^T X)^{1/2}; the Monte Carlo average over masks converges
/// to this value.
double dropout_objective(const Matrix& x, const Matrix& y, const Matrix& w, double p_keep);

} // namespace dlpls
