#pragma once

#include "dlpls/linalg.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace dlpls {

/// Gaussian posterior of the last-layer coefficients for one output column,
/// under the prior N(0, prior_var I) and noise variance noise_var:
///   S = (U^T U / noise_var + I / prior_var)^{-1},  m = S U^T y / noise_var.
struct ConjugatePosterior {
    Vector mean;        // L
    Matrix covariance;  // L x L, symmetric positive definite
    double prior_var = 0.0;
    double noise_var = 0.0;
};

ConjugatePosterior posterior(const Matrix& u, const Vector& y, double prior_var,
                             double noise_var);

struct PredictiveDistribution {
    double mean = 0.0;
    double variance = 0.0;  // includes the noise term, always >= noise_var
};

PredictiveDistribution posterior_predictive(const ConjugatePosterior& post, const Vector& u_star);

struct GibbsConfig {
    double prior_var = 0.1;
    double noise_a0 = 0.01;  // inverse-gamma shape
    double noise_b0 = 0.01;  // inverse-gamma scale
    std::optional<double> fixed_noise_var;  // bypasses the noise draw
    Index iterations = 2000;
    Index burn_in = 500;
    std::uint64_t seed = 0;
};

struct GibbsSamples {
    Matrix coefficients;  // kept draws x L
    Vector noise_var;     // kept draws (constant when fixed)
};

/// Alternates coefficient draws given the noise variance with an
/// inverse-gamma noise draw given the coefficients. With the noise fixed the
/// coefficient draws are exact samples from the conjugate posterior.
GibbsSamples gibbs_last_layer(const Matrix& u, const Vector& y, const GibbsConfig& cfg);

} // namespace dlpls
