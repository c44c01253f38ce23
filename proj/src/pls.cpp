#include "dlpls/pls.hpp"

#include "dlpls/errors.hpp"
#include "dlpls/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dlpls {

namespace {

Matrix krylov_basis(const Matrix& s_xx, const Vector& s_xy, Index K) {
    Matrix r(s_xy.size(), K);
    r.col(0) = s_xy;
    for (Index k = 1; k < K; ++k) r.col(k) = s_xx * r.col(k - 1);
    return r;
}

} // namespace

Matrix PlsModel::rotation() const {
    if (n_components == 0) return Matrix::Zero(n_inputs(), 0);
    const Matrix ptw = x_loadings.transpose() * weights;  // unit upper triangular
    return weights * ptw.partialPivLu().solve(Matrix::Identity(n_components, n_components));
}

Matrix PlsModel::standardize_x(const Matrix& x_raw) const {
    if (x_raw.cols() != x_means.size()) {
        throw data_error("model expects " + std::to_string(x_means.size()) +
                         " input columns, got " + std::to_string(x_raw.cols()));
    }
    Matrix out = x_raw.rowwise() - x_means.transpose();
    return out.array().rowwise() / x_scales.transpose().array();
}

Matrix PlsModel::destandardize_y(const Matrix& y_std) const {
    Matrix out = y_std.array().rowwise() * y_scales.transpose().array();
    return out.rowwise() + y_means.transpose();
}

PlsModel fit_pls(const StandardizedMatrix& x, const StandardizedMatrix& y, Index L,
                 InnerRelation mode) {
    const Index n = x.n();
    const Index p = x.cols();
    const Index q = y.cols();
    if (y.n() != n) throw data_error("fit_pls: X and Y row counts differ");
    if (L < 1) throw data_error("fit_pls: need at least one component");
    {
        const SvdResult dx = svd(x.values);
        const Index rank = numerical_rank(dx, n, p);
        if (L > rank) {
            throw data_error("fit_pls: L=" + std::to_string(L) +
                             " exceeds numerical rank " + std::to_string(rank));
        }
    }

    PlsModel m;
    m.requested_components = L;
    m.inner_mode = mode;
    m.x_means = x.means;
    m.x_scales = x.scales;
    m.y_means = y.means;
    m.y_scales = y.scales;
    m.weights.resize(p, L);
    m.x_loadings.resize(p, L);
    m.y_loadings.resize(q, L);
    m.x_scores.resize(n, L);
    m.y_scores.resize(n, L);
    m.inner_diag.resize(L);

    Matrix x_res = x.values;
    Matrix y_res = y.values;
    double first_cov = 0.0;
    Index achieved = 0;
    for (Index l = 0; l < L; ++l) {
        const SvdResult cov = svd(x_res.transpose() * y_res);
        const double s1 = cov.singular_values.size() > 0 ? cov.singular_values(0) : 0.0;
        if (l == 0) first_cov = s1;
        if (s1 <= first_cov * 1e-12) break;  // residual covariance exhausted

        const Vector w = cov.left.col(0);
        const Vector qdir = cov.right.col(0);
        const Vector t = x_res * w;
        const double tt = t.squaredNorm();
        if (tt <= 0.0) break;
        const Vector u = y_res * qdir;
        const double beta = t.dot(u) / tt;
        const Vector p_load = x_res.transpose() * t / tt;

        x_res.noalias() -= t * p_load.transpose();
        y_res.noalias() -= (beta * t) * qdir.transpose();

        m.weights.col(l) = w;
        m.x_loadings.col(l) = p_load;
        m.y_loadings.col(l) = qdir;
        m.x_scores.col(l) = t;
        m.y_scores.col(l) = u;
        m.inner_diag(l) = beta;
        ++achieved;
    }

    if (achieved == 0) throw numeric_error("fit_pls: zero covariance between X and Y");
    if (achieved < L) {
        m.weights.conservativeResize(p, achieved);
        m.x_loadings.conservativeResize(p, achieved);
        m.y_loadings.conservativeResize(q, achieved);
        m.x_scores.conservativeResize(n, achieved);
        m.y_scores.conservativeResize(n, achieved);
        m.inner_diag.conservativeResize(achieved);
        m.early_stop = true;
    }
    m.n_components = achieved;

    if (mode == InnerRelation::FullMatrix) {
        m.inner_full = ols(m.x_scores, m.y_scores);
    }
    return m;
}

PlsBeta beta_pls(const PlsModel& m) {
    const Matrix rot = m.rotation();
    Matrix std_beta;
    if (m.inner_mode == InnerRelation::FullMatrix) {
        std_beta = rot * m.inner_full * m.y_loadings.transpose();
    } else {
        std_beta = rot * m.inner_diag.asDiagonal() * m.y_loadings.transpose();
    }

    PlsBeta out;
    out.standardized = std_beta;
    out.slopes = std_beta;
    for (Index j = 0; j < out.slopes.rows(); ++j) {
        for (Index k = 0; k < out.slopes.cols(); ++k) {
            out.slopes(j, k) *= m.y_scales(k) / m.x_scales(j);
        }
    }
    out.intercept = m.y_means.transpose() - m.x_means.transpose() * out.slopes;
    return out;
}

Matrix scores(const PlsModel& m, const Matrix& x_new_raw) {
    return m.standardize_x(x_new_raw) * m.rotation();
}

HellandResult helland_beta(const StandardizedMatrix& x, const Vector& y, Index K) {
    const Index n = x.n();
    const Index p = x.cols();
    if (y.size() != n) throw data_error("helland_beta: y length mismatch");
    if (K < 1 || K > p) throw data_error("helland_beta: K out of range [1, p]");
    if (n < 2) throw data_error("helland_beta: need n >= 2");

    const double denom = static_cast<double>(n - 1);
    const Matrix s_xx = x.values.transpose() * x.values / denom;
    const Vector s_xy = x.values.transpose() * y / denom;

    const Matrix r = krylov_basis(s_xx, s_xy, K);
    const Matrix a = r.transpose() * s_xx * r;
    const Vector b = r.transpose() * s_xy;

    // Pseudo-inverse solve; the Krylov columns degenerate quickly for large K.
    const LeastSquares sol = ols_full(a, b);
    HellandResult out;
    out.beta = r * sol.coefficients.col(0);
    out.effective_components = sol.rank;
    return out;
}

Matrix helland_iterative(const StandardizedMatrix& x, const Vector& y, Index K) {
    const Index n = x.n();
    const Index p = x.cols();
    if (y.size() != n) throw data_error("helland_iterative: y length mismatch");
    if (K < 1 || K > p) throw data_error("helland_iterative: K out of range [1, p]");

    const double denom = static_cast<double>(n - 1);
    const Matrix s_xx = x.values.transpose() * x.values / denom;
    const Vector s_xy = x.values.transpose() * y / denom;
    const Matrix basis = krylov_basis(s_xx, s_xy, K);
    const Matrix features = x.values * basis;  // n x K

    Matrix fitted(n, K);
    for (Index k = 1; k <= K; ++k) {
        const Matrix coef = ols(features.leftCols(k), y);
        fitted.col(k - 1) = features.leftCols(k) * coef;
    }
    return fitted;
}

CvCurve select_components_cv(const Matrix& x_raw, const Matrix& y_raw, int folds,
                             Index L_max, std::uint64_t seed) {
    const Index n = x_raw.rows();
    if (y_raw.rows() != n) throw data_error("select_components_cv: row mismatch");
    if (folds < 2) throw data_error("select_components_cv: need at least 2 folds");
    if (folds > n) throw data_error("select_components_cv: more folds than rows");
    if (L_max < 1) throw data_error("select_components_cv: L_max must be positive");

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    Rng rng(seed);
    rng.shuffle(order);

    std::vector<double> sse(static_cast<std::size_t>(L_max), 0.0);
    double cells = 0.0;

    for (int f = 0; f < folds; ++f) {
        std::vector<Index> train_rows, test_rows;
        for (std::size_t i = 0; i < order.size(); ++i) {
            (static_cast<int>(i % static_cast<std::size_t>(folds)) == f ? test_rows : train_rows)
                .push_back(order[i]);
        }
        Matrix x_train = x_raw(train_rows, Eigen::all);
        Matrix y_train = y_raw(train_rows, Eigen::all);
        Matrix x_test = x_raw(test_rows, Eigen::all);
        Matrix y_test = y_raw(test_rows, Eigen::all);

        const StandardizedMatrix sx = standardize(x_train);
        const StandardizedMatrix sy = standardize(y_train);
        {
            const Index rank = numerical_rank(svd(sx.values), sx.n(), sx.cols());
            if (rank < L_max) {
                throw data_error("select_components_cv: fold " + std::to_string(f) +
                                 " has rank " + std::to_string(rank) + " < L_max=" +
                                 std::to_string(L_max) + " (fold too small)");
            }
        }
        const PlsModel m = fit_pls(sx, sy, L_max);
        const Matrix rot = m.rotation();
        const Matrix x_test_std = sx.apply(x_test);

        for (Index L = 1; L <= L_max; ++L) {
            const Index use = std::min(L, m.n_components);
            const Matrix beta_std = rot.leftCols(use) *
                                    m.inner_diag.head(use).asDiagonal() *
                                    m.y_loadings.leftCols(use).transpose();
            Matrix pred_std = x_test_std * beta_std;
            Matrix pred = pred_std.array().rowwise() * sy.scales.transpose().array();
            pred = pred.rowwise() + sy.means.transpose();
            sse[static_cast<std::size_t>(L - 1)] += (y_test - pred).squaredNorm();
        }
        cells += static_cast<double>(y_test.size());
    }

    CvCurve curve;
    curve.seed = seed;
    curve.candidates.resize(static_cast<std::size_t>(L_max));
    std::iota(curve.candidates.begin(), curve.candidates.end(), Index{1});
    curve.mse.resize(sse.size());
    for (std::size_t i = 0; i < sse.size(); ++i) curve.mse[i] = sse[i] / cells;

    std::size_t best = 0;
    for (std::size_t i = 1; i < curve.mse.size(); ++i) {
        if (curve.mse[i] < curve.mse[best]) best = i;  // strict: ties keep smallest L
    }
    curve.chosen = curve.candidates[best];
    return curve;
}

Vector scree_values(const StandardizedMatrix& x, const StandardizedMatrix& y) {
    return svd(x.values.transpose() * y.values).singular_values;
}

namespace {

nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
    const auto rows = static_cast<Index>(j.size());
    if (rows == 0) return Matrix(0, 0);
    const auto cols = static_cast<Index>(j.at(0).size());
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index k = 0; k < cols; ++k) m(i, k) = j.at(i).at(k).get<double>();
    }
    return m;
}

nlohmann::json vector_to_json(const Vector& v) {
    nlohmann::json out = nlohmann::json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Vector vector_from_json(const nlohmann::json& j) {
    Vector v(static_cast<Index>(j.size()));
    for (Index i = 0; i < v.size(); ++i) v(i) = j.at(i).get<double>();
    return v;
}

} // namespace

nlohmann::json pls_model_to_json(const PlsModel& m) {
    nlohmann::json j;
    j["format"] = "dlpls-pls-model";
    j["version"] = 1;
    j["n_components"] = m.n_components;
    j["requested_components"] = m.requested_components;
    j["early_stop"] = m.early_stop;
    j["inner_mode"] = m.inner_mode == InnerRelation::FullMatrix ? "full" : "diag";
    j["weights"] = matrix_to_json(m.weights);
    j["x_loadings"] = matrix_to_json(m.x_loadings);
    j["y_loadings"] = matrix_to_json(m.y_loadings);
    j["x_scores"] = matrix_to_json(m.x_scores);
    j["y_scores"] = matrix_to_json(m.y_scores);
    j["inner_diag"] = vector_to_json(m.inner_diag);
    if (m.inner_mode == InnerRelation::FullMatrix) j["inner_full"] = matrix_to_json(m.inner_full);
    j["x_means"] = vector_to_json(m.x_means);
    j["x_scales"] = vector_to_json(m.x_scales);
    j["y_means"] = vector_to_json(m.y_means);
    j["y_scales"] = vector_to_json(m.y_scales);
    return j;
}

PlsModel pls_model_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "dlpls-pls-model") {
        throw data_error("not a PLS model document");
    }
    if (j.value("version", 0) != 1) {
        throw data_error("unsupported model version: " + j.value("version", nlohmann::json()).dump());
    }
    PlsModel m;
    m.n_components = j.at("n_components").get<Index>();
    m.requested_components = j.at("requested_components").get<Index>();
    m.early_stop = j.at("early_stop").get<bool>();
    m.inner_mode = j.at("inner_mode").get<std::string>() == "full" ? InnerRelation::FullMatrix
                                                                   : InnerRelation::PerComponent;
    m.weights = matrix_from_json(j.at("weights"));
    m.x_loadings = matrix_from_json(j.at("x_loadings"));
    m.y_loadings = matrix_from_json(j.at("y_loadings"));
    m.x_scores = matrix_from_json(j.at("x_scores"));
    m.y_scores = matrix_from_json(j.at("y_scores"));
    m.inner_diag = vector_from_json(j.at("inner_diag"));
    if (j.contains("inner_full")) m.inner_full = matrix_from_json(j.at("inner_full"));
    m.x_means = vector_from_json(j.at("x_means"));
    m.x_scales = vector_from_json(j.at("x_scales"));
    m.y_means = vector_from_json(j.at("y_means"));
    m.y_scales = vector_from_json(j.at("y_scales"));
    return m;
}

} // namespace dlpls
