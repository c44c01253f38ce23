#include "dlpls/pls.hpp"

#include "dlpls/errors.hpp"
#include "dlpls/simulation.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace dlpls;
using dlpls::testing::as_standardized;
using dlpls::testing::random_matrix;
using dlpls::testing::random_vector;

namespace {

PlsModel fit_random(Rng& rng, Index n, Index p, Index q, Index L) {
    const StandardizedMatrix sx = standardize(random_matrix(rng, n, p));
    const StandardizedMatrix sy = standardize(random_matrix(rng, n, q));
    return fit_pls(sx, sy, L);
}

} // namespace

TEST_CASE("one component fits a response equal to an input column exactly") {
    Rng rng(41);
    const Matrix x = random_matrix(rng, 30, 4);
    const StandardizedMatrix sx = standardize(x);
    const StandardizedMatrix sy = standardize(Matrix(x.col(0)));

    const PlsModel m = fit_pls(sx, sy, 1);
    // t1 is proportional to the (standardized) column itself
    CHECK(std::abs(pearson(m.x_scores.col(0), Vector(sx.values.col(0))))
          > 1.0 - 1e-10);

    const PlsBeta beta = beta_pls(m);
    const Matrix fitted = sx.values * beta.standardized;
    CHECK((fitted - sy.values).norm() < 1e-8 * sy.values.norm());
}

TEST_CASE("two-output simulation recovers the linear coefficient row") {
    SimSpec spec;
    spec.scenario = Scenario::TwoOutput;
    spec.n = 1000;
    spec.seed = 42;
    const SimData data = generate(spec);

    const StandardizedMatrix sx = standardize(data.x);
    const StandardizedMatrix sy = standardize(data.y);
    const PlsModel m = fit_pls(sx, sy, 2);
    const PlsBeta beta = beta_pls(m);

    const Vector expected = data.true_b.row(0);  // (0, 0, 2, 2)
    for (Index j = 0; j < 4; ++j) {
        CHECK(std::abs(beta.slopes(j, 0) - expected(j)) < 0.1);
    }
}

TEST_CASE("full-rank PLS equals OLS") {
    Rng rng(43);
    for (const Index q : {Index{1}, Index{3}}) {
        const Matrix x = random_matrix(rng, 50, 5);
        const Matrix y = random_matrix(rng, 50, q);
        const StandardizedMatrix sx = standardize(x);
        const StandardizedMatrix sy = standardize(y);
        const PlsModel m = fit_pls(sx, sy, 5);
        const Matrix direct = ols(sx.values, sy.values);
        CHECK((beta_pls(m).standardized - direct).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("beta_pls on orthogonal columns picks out the target column") {
    Rng rng(44);
    Matrix x = testing::centered_orthonormal(rng, 40, 3);
    x *= 5.0;
    const Vector y = x.col(0);
    const StandardizedMatrix sx = standardize(x);
    const StandardizedMatrix sy = standardize(Matrix(y));
    const PlsBeta beta = beta_pls(fit_pls(sx, sy, 1));
    CHECK(beta.slopes(0, 0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(beta.slopes(1, 0)) < 1e-8);
    CHECK(std::abs(beta.slopes(2, 0)) < 1e-8);
    CHECK(std::abs(beta.intercept(0)) < 1e-8);
}

TEST_CASE("helland closed form at K=1") {
    Rng rng(45);
    const StandardizedMatrix sx = standardize(random_matrix(rng, 60, 4));
    const Vector y = standardize(Matrix(random_vector(rng, 60))).values.col(0);

    const Matrix s_xx = sx.values.transpose() * sx.values / 59.0;
    const Vector s_xy = sx.values.transpose() * y / 59.0;
    const Vector expected = s_xy * (s_xy.dot(s_xy) / s_xy.dot(s_xx * s_xy));
    CHECK((helland_beta(sx, y, 1).beta - expected).norm() < 1e-10);
}

TEST_CASE("helland matches the deflation algorithm for every K") {
    Rng rng(46);
    const Index p = 6;
    const Matrix x = random_matrix(rng, 200, p);
    const Vector y_raw = random_vector(rng, 200);
    const StandardizedMatrix sx = standardize(x);
    const StandardizedMatrix sy = standardize(Matrix(y_raw));
    const Vector y = sy.values.col(0);

    for (Index K = 1; K <= p; ++K) {
        const PlsModel m = fit_pls(sx, sy, K);
        const Vector via_krylov = helland_beta(sx, y, K).beta;
        const Vector via_nipals = beta_pls(m).standardized.col(0);
        CHECK((via_krylov - via_nipals).cwiseAbs().maxCoeff() < 1e-6);
    }
    // K = p reaches OLS
    const Vector direct = ols(sx.values, Matrix(y)).col(0);
    CHECK((helland_beta(sx, y, p).beta - direct).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("helland iterative fitted values agree with the closed form") {
    Rng rng(47);
    const Matrix x = random_matrix(rng, 80, 5);
    const StandardizedMatrix sx = standardize(x);
    const Vector y = standardize(Matrix(random_vector(rng, 80))).values.col(0);

    const Matrix fitted = helland_iterative(sx, y, 5);

    // K=1 equals the simple regression of y on the first Krylov feature
    const Vector s_xy = sx.values.transpose() * y / 79.0;
    const Vector f1 = sx.values * s_xy;
    const Vector simple = f1 * (f1.dot(y) / f1.squaredNorm());
    CHECK((fitted.col(0) - simple).norm() < 1e-8);

    // K=2 matches X beta_helland(2)
    CHECK((fitted.col(1) - sx.values * helland_beta(sx, y, 2).beta).norm() < 1e-6);

    // K=p equals OLS fitted values
    const Vector ols_fit = sx.values * ols(sx.values, Matrix(y));
    CHECK((fitted.col(4) - ols_fit).norm() < 1e-6);
}

TEST_CASE("scores reproduce the stored score block on training data") {
    Rng rng(48);
    const Matrix x = random_matrix(rng, 30, 4);
    const Matrix y = random_matrix(rng, 30, 2);
    const StandardizedMatrix sx = standardize(x);
    const StandardizedMatrix sy = standardize(y);
    for (const Index L : {Index{2}, Index{4}}) {
        const PlsModel m = fit_pls(sx, sy, L);
        CHECK((scores(m, x) - m.x_scores).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("a row at the training means projects to the zero score") {
    Rng rng(49);
    const Matrix x = random_matrix(rng, 25, 3);
    const StandardizedMatrix sx = standardize(x);
    const StandardizedMatrix sy = standardize(Matrix(random_vector(rng, 25)));
    const PlsModel m = fit_pls(sx, sy, 2);
    const Matrix at_means = sx.means.transpose();
    CHECK(scores(m, at_means).norm() < 1e-12);
}

TEST_CASE("single-row projection matches the hand-computed 2x2 case") {
    // Orthogonal standardized design: rotation reduces to the weights.
    Matrix x(4, 2);
    x << 1, 1, 1, -1, -1, 1, -1, -1;
    const StandardizedMatrix sx = as_standardized(x);
    Vector y(4);
    y << 2, 1, -1, -2;  // y = 1.5 x1 + 0.5 x2 on the standardized scale
    const PlsModel m = fit_pls(sx, as_standardized(Matrix(y)), 2);

    Matrix row(1, 2);
    row << 1.0, 2.0;
    const Matrix t = scores(m, row);
    const Matrix expected = row * m.rotation();
    CHECK((t - expected).norm() < 1e-12);
    // with orthogonal X the first weight aligns with X^T y direction
    const Vector w1 = m.weights.col(0);
    const Vector xty = x.transpose() * y;
    CHECK(std::abs(std::abs(w1.dot(xty.normalized())) - 1.0) < 1e-10);
}

TEST_CASE("cv picks one component for a noiseless rank-1 relation") {
    Rng rng(50);
    const Matrix x = random_matrix(rng, 60, 5);
    Vector w(5);
    w << 1, -2, 0.5, 0, 1;
    const Matrix y = x * w;  // exact single direction
    const CvCurve curve = select_components_cv(x, y, 5, 4, 7);
    CHECK(curve.chosen == 1);
}

TEST_CASE("cv on pure noise stays small and the curve does not improve") {
    Rng rng(51);
    const Matrix x = random_matrix(rng, 80, 5);
    const Matrix y = random_matrix(rng, 80, 1);  // independent of x
    const CvCurve curve = select_components_cv(x, y, 5, 5, 11);
    CHECK(curve.chosen <= 2);
    const double base = curve.mse[static_cast<std::size_t>(curve.chosen - 1)];
    for (const double m : curve.mse) CHECK(m >= base * (1.0 - 1e-12));
    // no candidate improves on the chosen one by more than noise jitter
    CHECK(curve.mse.back() >= base);
}

TEST_CASE("cv selects the two signal directions of the two-output simulation") {
    SimSpec spec;
    spec.scenario = Scenario::TwoOutput;
    spec.n = 400;
    spec.seed = 5;
    const SimData data = generate(spec);
    const CvCurve curve = select_components_cv(data.x, data.y, 5, 4, 17);
    CHECK(curve.chosen == 2);
}

TEST_CASE("cv rejects unusable fold setups") {
    Rng rng(52);
    const Matrix x = random_matrix(rng, 12, 3);
    const Matrix y = random_matrix(rng, 12, 1);
    CHECK_THROWS_AS(select_components_cv(x, y, 1, 2, 1), data_error);
    CHECK_THROWS_AS(select_components_cv(x, y, 13, 2, 1), data_error);
    CHECK_THROWS_AS(select_components_cv(x, y, 6, 5, 1), data_error);  // rank < L_max
}

TEST_CASE("scree of Y = X equals the squared singular values") {
    Rng rng(53);
    const StandardizedMatrix sx = standardize(random_matrix(rng, 30, 4));
    const Vector values = scree_values(sx, sx);
    const SvdResult s = svd(sx.values);
    for (Index j = 0; j < 4; ++j) {
        CHECK(values(j) ==
              doctest::Approx(s.singular_values(j) * s.singular_values(j)).epsilon(1e-8));
    }
}

TEST_CASE("scree separates signal from noise") {
    Rng rng(54);
    const Matrix x = random_matrix(rng, 200, 5);
    const Vector w = random_vector(rng, 5).normalized();
    const Matrix y_signal = x * w + 0.05 * random_matrix(rng, 200, 1);
    const Matrix y_noise = random_matrix(rng, 200, 1);

    const StandardizedMatrix sx = standardize(x);
    const Vector sig = scree_values(sx, standardize(y_signal));
    CHECK(sig(0) / sig(1) > 5.0);

    const Vector flat = scree_values(sx, standardize(y_noise));
    CHECK(flat(0) / flat(flat.size() - 1) < 10.0);
    CHECK(flat(0) < sig(0) / 5.0);
}

TEST_CASE("score columns are orthogonal and direction weights orthonormal") {
    Rng rng(55);
    const StandardizedMatrix sx = standardize(random_matrix(rng, 40, 6));
    const StandardizedMatrix sy = standardize(random_matrix(rng, 40, 2));
    const PlsModel m = fit_pls(sx, sy, 4);

    const Matrix tt = m.x_scores.transpose() * m.x_scores;
    for (Index i = 0; i < 4; ++i) {
        for (Index j = 0; j < 4; ++j) {
            if (i != j) CHECK(std::abs(tt(i, j)) < 1e-8 * tt.diagonal().maxCoeff());
        }
    }
    CHECK((m.weights.transpose() * m.weights - Matrix::Identity(4, 4)).norm() < 1e-8);
    // the score projection inverts the decomposition on the training block
    CHECK((sx.values * m.rotation() - m.x_scores).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("permuting input columns permutes the coefficients identically") {
    Rng rng(56);
    const Matrix x = random_matrix(rng, 30, 4);
    const Matrix y = random_matrix(rng, 30, 1);
    const StandardizedMatrix sy = standardize(y);

    Matrix perm = Matrix::Zero(4, 4);
    perm(0, 1) = perm(1, 3) = perm(2, 0) = perm(3, 2) = 1.0;

    const Matrix b1 = beta_pls(fit_pls(standardize(x), sy, 2)).standardized;
    const Matrix b2 = beta_pls(fit_pls(standardize(Matrix(x * perm)), sy, 2)).standardized;
    CHECK((perm * b2 - b1).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("fitted values are invariant under rotation of the input basis") {
    Rng rng(57);
    Matrix x = random_matrix(rng, 40, 4);
    x.rowwise() -= x.colwise().mean().eval();
    const Matrix y = random_matrix(rng, 40, 2);
    const StandardizedMatrix sy = standardize(y);

    const Matrix q = Eigen::HouseholderQR<Matrix>(random_matrix(rng, 4, 4)).householderQ();

    const StandardizedMatrix sx = as_standardized(x);
    const StandardizedMatrix sxr = as_standardized(Matrix(x * q));
    const Matrix f1 = sx.values * beta_pls(fit_pls(sx, sy, 3)).standardized;
    const Matrix f2 = sxr.values * beta_pls(fit_pls(sxr, sy, 3)).standardized;
    CHECK((f1 - f2).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("early stop returns the achieved components with a warning flag") {
    Rng rng(58);
    const Matrix x = random_matrix(rng, 30, 4);
    Vector w(4);
    w << 1, 2, -1, 0.5;
    const Matrix y = x * w;  // exactly rank-1 relation
    const PlsModel m = fit_pls(standardize(x), standardize(y), 3);
    CHECK(m.early_stop);
    CHECK(m.n_components < 3);
    CHECK(m.requested_components == 3);
}

TEST_CASE("requesting more components than the rank is an error") {
    Rng rng(59);
    Matrix x = random_matrix(rng, 20, 4);
    x.col(3) = x.col(0) + x.col(1);  // rank 3
    CHECK_THROWS_AS(fit_pls(standardize(x), standardize(Matrix(random_matrix(rng, 20, 1))), 4),
                    data_error);
}

TEST_CASE("full inner matrix mode regresses U on T jointly") {
    Rng rng(60);
    const StandardizedMatrix sx = standardize(random_matrix(rng, 50, 5));
    const StandardizedMatrix sy = standardize(random_matrix(rng, 50, 3));
    const PlsModel m = fit_pls(sx, sy, 3, InnerRelation::FullMatrix);
    CHECK(m.inner_full.rows() == 3);
    CHECK((m.inner_full - ols(m.x_scores, m.y_scores)).norm() < 1e-10);
}

TEST_CASE("model serialization round-trips bit for bit") {
    Rng rng(61);
    const PlsModel m = fit_random(rng, 25, 4, 2, 3);
    const PlsModel back = pls_model_from_json(nlohmann::json::parse(pls_model_to_json(m).dump()));
    CHECK(back.weights == m.weights);
    CHECK(back.x_loadings == m.x_loadings);
    CHECK(back.y_loadings == m.y_loadings);
    CHECK(back.x_scores == m.x_scores);
    CHECK(back.inner_diag == m.inner_diag);
    CHECK(back.x_means == m.x_means);
    CHECK(back.y_scales == m.y_scales);
    CHECK(back.n_components == m.n_components);
}
