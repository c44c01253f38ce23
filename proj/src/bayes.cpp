#include "dlpls/bayes.hpp"

#include "dlpls/errors.hpp"
#include "dlpls/rng.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace dlpls {

ConjugatePosterior posterior(const Matrix& u, const Vector& y, double prior_var,
                             double noise_var) {
    if (u.rows() != y.size()) throw data_error("posterior: U/y row mismatch");
    if (!(prior_var > 0.0)) throw data_error("posterior: prior variance must be positive");
    if (!(noise_var > 0.0)) throw data_error("posterior: noise variance must be positive");
    if (!u.allFinite() || !y.allFinite()) throw data_error("posterior: non-finite inputs");

    const Index L = u.cols();
    Matrix precision = u.transpose() * u / noise_var;
    precision.diagonal().array() += 1.0 / prior_var;

    const Eigen::LLT<Matrix> fac(precision);
    if (fac.info() != Eigen::Success) {
        throw numeric_error("posterior: precision matrix not positive definite");
    }
    ConjugatePosterior post;
    post.covariance = fac.solve(Matrix::Identity(L, L));
    post.covariance = 0.5 * (post.covariance + post.covariance.transpose());
    post.mean = fac.solve(u.transpose() * y / noise_var);
    post.prior_var = prior_var;
    post.noise_var = noise_var;
    return post;
}

PredictiveDistribution posterior_predictive(const ConjugatePosterior& post,
                                            const Vector& u_star) {
    if (u_star.size() != post.mean.size()) {
        throw data_error("posterior_predictive: score dimension mismatch");
    }
    PredictiveDistribution out;
    out.mean = u_star.dot(post.mean);
    out.variance = u_star.dot(post.covariance * u_star) + post.noise_var;
    return out;
}

GibbsSamples gibbs_last_layer(const Matrix& u, const Vector& y, const GibbsConfig& cfg) {
    if (cfg.iterations <= cfg.burn_in || cfg.burn_in < 0) {
        throw data_error("gibbs: need iterations > burn_in >= 0");
    }
    if (!(cfg.prior_var > 0.0)) throw data_error("gibbs: prior variance must be positive");
    const Index n = u.rows();
    const Index L = u.cols();
    if (y.size() != n) throw data_error("gibbs: U/y row mismatch");

    Rng rng(cfg.seed);
    const Matrix utu = u.transpose() * u;
    const Vector uty = u.transpose() * y;

    const Index kept = cfg.iterations - cfg.burn_in;
    GibbsSamples out;
    out.coefficients.resize(kept, L);
    out.noise_var.resize(kept);

    double noise = cfg.fixed_noise_var.value_or(1.0);
    Vector coef = Vector::Zero(L);
    for (Index it = 0; it < cfg.iterations; ++it) {
        // coefficients | noise
        Matrix precision = utu / noise;
        precision.diagonal().array() += 1.0 / cfg.prior_var;
        const Eigen::LLT<Matrix> fac(precision);
        if (fac.info() != Eigen::Success) {
            throw numeric_error("gibbs: precision matrix not positive definite");
        }
        const Vector mean = fac.solve(uty / noise);
        Vector z(L);
        for (Index j = 0; j < L; ++j) z(j) = rng.normal();
        // draw = mean + chol(S) z, with chol(S) = L^{-T} for precision = L L^T
        coef = mean + fac.matrixU().solve(z);

        // noise | coefficients
        if (!cfg.fixed_noise_var) {
            const double rss = (y - u * coef).squaredNorm();
            const double shape = cfg.noise_a0 + 0.5 * static_cast<double>(n);
            const double rate = cfg.noise_b0 + 0.5 * rss;
            noise = rate / rng.gamma(shape, 1.0);  // inverse-gamma draw
        }

        if (it >= cfg.burn_in) {
            out.coefficients.row(it - cfg.burn_in) = coef.transpose();
            out.noise_var(it - cfg.burn_in) = noise;
        }
    }
    return out;
}

} // namespace dlpls
