#pragma once

#include "dlpls/linalg.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace dlpls {

enum class SmootherKind { LocalLinear, SmoothingSpline };

struct BandwidthPolicy {
    SmootherKind kind = SmootherKind::LocalLinear;
    double bandwidth = 0.0;       // 0 -> plug-in 1.06 sd(index) n^{-1/5}
    double spline_penalty = 0.0;  // 0 -> GCV over a log grid
};

/// Univariate link estimate tabulated on a grid; evaluation interpolates
/// linearly and clamps outside the observed index range.
struct LinkSmoother {
    Vector grid;
    Vector values;
    double bandwidth = 0.0;

    double evaluate(double u) const;
};

/// Single-index fit: OLS direction (consistent up to the proportionality
/// constant k under Gaussian inputs) plus a nonparametric link recovered by
/// smoothing y against the fitted index.
struct SingleIndexFit {
    Vector beta_hat;   // p, OLS slopes
    double intercept = 0.0;
    LinkSmoother link; // fitted on the index beta_hat . x
    double smoother_bandwidth = 0.0;
    Index n_used = 0;

    Vector index(const Matrix& x) const { return x * beta_hat; }
    Vector predict(const Matrix& x) const;
};

SingleIndexFit fit_single_index(const Matrix& x, const Vector& y,
                                const BandwidthPolicy& policy = {});

struct GaussianDesign {
    double mean = 0.0;
    double sd = 1.0;  // per-coordinate, iid
};

struct SteinK {
    double k = 0.0;
    double standard_error = 0.0;
    std::size_t draws = 0;
};

/// Monte Carlo estimate of k = cov(g(u), u) var(X) / var(u) for the index
/// u = alpha + beta . X with iid Gaussian coordinates. The standard error
/// comes from batching the draws.
SteinK stein_k(const Vector& beta, const std::function<double(double)>& g,
               double alpha = 0.0, const GaussianDesign& xdist = {},
               std::size_t draws = 1000000, std::uint64_t seed = 1u);

enum class RecursiveActivation { Relu, Identity };

/// Layer-by-layer OLS estimate of a deep ReLU stack. Stage s regresses Y on
/// the current feature block, then pushes the features through the estimated
/// layer and the activation. Every intermediate width equals the output
/// width by construction.
struct DeepRecursiveFit {
    std::vector<Matrix> layers;  // estimation order; last entry is the linear top
    std::vector<double> residual_mse;
    std::vector<std::vector<Index>> dead_units;  // all-zero feature columns per stage
    RecursiveActivation activation = RecursiveActivation::Relu;

    Matrix predict(const Matrix& x) const;
};

DeepRecursiveFit fit_deep_relu_recursive(const Matrix& x, const Matrix& y,
                                         const std::vector<Index>& hidden_dims,
                                         RecursiveActivation act = RecursiveActivation::Relu);

/// Quantifies recovery up to proportionality: per-row through-origin slope
/// and R^2, plus the principal angles between row spaces (degrees,
/// nondecreasing).
struct ProportionalityReport {
    Vector slopes;
    Vector r_squared;
    Vector principal_angles_deg;
};

ProportionalityReport proportionality_report(const Matrix& b_hat, const Matrix& b_true);

/// Pearson correlation of two equally sized vectors.
double pearson(const Vector& a, const Vector& b);

} // namespace dlpls
