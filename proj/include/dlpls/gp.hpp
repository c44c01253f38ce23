#pragma once

#include "dlpls/linalg.hpp"

#include <Eigen/Cholesky>

namespace dlpls {

/// Squared-exponential kernel, zero prior mean.
struct GpConfig {
    double lengthscale = 1.0;
    double signal_variance = 1.0;
    double noise_variance = 0.0;  // jitter is added for factorization when 0
};

/// One-dimensional Gaussian process regressor used per score pair.
class GpRegressor {
public:
    struct Prediction {
        Vector mean;
        Vector variance;  // latent variance K** - K*^T K^{-1} K*
    };

    static GpRegressor fit(const Vector& t, const Vector& u, const GpConfig& cfg);

    Prediction predict(const Vector& t_new) const;

    const Vector& train_inputs() const { return t_; }
    const Vector& train_targets() const { return u_; }
    const GpConfig& config() const { return cfg_; }
    double jitter_used() const { return jitter_; }

private:
    Vector t_, u_;
    Vector alpha_;  // (K + (noise+jitter) I)^{-1} u
    Eigen::LLT<Matrix> chol_;
    GpConfig cfg_;
    double jitter_ = 0.0;
};

} // namespace dlpls
