#pragma once

#include "dlpls/dataset.hpp"
#include "dlpls/linalg.hpp"

#include <json.hpp>

#include <cstdint>
#include <vector>

namespace dlpls {

/// Inner relation between X-scores and Y-scores.
enum class InnerRelation {
    PerComponent,  // scalar regression of u_l on t_l (classical two-block)
    FullMatrix,    // joint L x L regression of U on T
};

/// Fitted two-block PLS decomposition.
///
/// Column conventions (component l = column l):
///   weights     p x L   direction applied to the deflated X residual
///   x_loadings  p x L   deflation loadings, X_res -= t_l p_l^T
///   y_loadings  q x L   paired Y directions (unit norm)
///   x_scores    n x L   t_l = X_res w_l
///   y_scores    n x L   u_l = Y_res q_l
///
/// The weight columns are orthonormal and the score columns mutually
/// orthogonal. Standardization parameters of the training blocks are stored
/// so raw-unit data can be projected and predictions mapped back.
struct PlsModel {
    Index n_components = 0;          // achieved
    Index requested_components = 0;  // as asked; > n_components iff early_stop
    bool early_stop = false;

    Matrix weights;
    Matrix x_loadings;
    Matrix y_loadings;
    Matrix x_scores;
    Matrix y_scores;

    InnerRelation inner_mode = InnerRelation::PerComponent;
    Vector inner_diag;  // per-component coefficients of u_l on t_l
    Matrix inner_full;  // L x L, only when inner_mode == FullMatrix

    Vector x_means, x_scales, y_means, y_scales;

    Index n_inputs() const { return weights.rows(); }
    Index n_outputs() const { return y_loadings.rows(); }

    /// Projection applied to standardized X rows to reproduce the scores:
    /// R = W (P^T W)^{-1}, so T = X_std R exactly on training data.
    Matrix rotation() const;

    Matrix standardize_x(const Matrix& x_raw) const;
    Matrix destandardize_y(const Matrix& y_std) const;
};

PlsModel fit_pls(const StandardizedMatrix& x, const StandardizedMatrix& y, Index L,
                 InnerRelation mode = InnerRelation::PerComponent);

/// Coefficient assembly: Y_std = X_std * standardized; raw-unit predictions
/// are intercept + X_raw * slopes.
struct PlsBeta {
    Matrix standardized;         // p x q
    Matrix slopes;               // p x q, raw units
    Eigen::RowVectorXd intercept;  // 1 x q
};

PlsBeta beta_pls(const PlsModel& m);

/// Score projection of raw-unit rows: standardize with the stored training
/// parameters, then apply the rotation.
Matrix scores(const PlsModel& m, const Matrix& x_new_raw);

/// Krylov-basis PLS coefficients for a single response, Helland's closed
/// form. `y` must be centered (standardized inputs match fit_pls).
struct HellandResult {
    Vector beta;              // p
    Index effective_components;  // < K iff the Krylov space degenerated
};

HellandResult helland_beta(const StandardizedMatrix& x, const Vector& y, Index K);

/// Helland's iterative variant: fitted values of the regression of y on the
/// first k Krylov features, for k = 1..K (columns of the result).
Matrix helland_iterative(const StandardizedMatrix& x, const Vector& y, Index K);

struct CvCurve {
    std::vector<Index> candidates;
    std::vector<double> mse;  // mean held-out squared error per candidate
    Index chosen = 0;
    std::uint64_t seed = 0;
};

/// K-fold cross-validation over the component count, on raw-unit blocks.
/// Standardization is re-estimated inside each training fold. Ties in the
/// argmin resolve to the smallest L.
CvCurve select_components_cv(const Matrix& x_raw, const Matrix& y_raw, int folds,
                             Index L_max, std::uint64_t seed);

/// Singular values of X_std^T Y_std, nonincreasing.
Vector scree_values(const StandardizedMatrix& x, const StandardizedMatrix& y);

nlohmann::json pls_model_to_json(const PlsModel& m);
PlsModel pls_model_from_json(const nlohmann::json& j);

} // namespace dlpls
