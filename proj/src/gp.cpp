#include "dlpls/gp.hpp"

#include "dlpls/errors.hpp"

#include <cmath>

namespace dlpls {

namespace {

double kernel(double a, double b, const GpConfig& cfg) {
    const double d = (a - b) / cfg.lengthscale;
    return cfg.signal_variance * std::exp(-0.5 * d * d);
}

} // namespace

GpRegressor GpRegressor::fit(const Vector& t, const Vector& u, const GpConfig& cfg) {
    if (t.size() != u.size()) throw data_error("gp: input/target size mismatch");
    if (t.size() == 0) throw data_error("gp: empty training set");
    if (!(cfg.lengthscale > 0.0) || !(cfg.signal_variance > 0.0) || cfg.noise_variance < 0.0) {
        throw data_error("gp: invalid kernel configuration");
    }

    const Index n = t.size();
    Matrix k(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j <= i; ++j) {
            k(i, j) = kernel(t(i), t(j), cfg);
            k(j, i) = k(i, j);
        }
    }

    GpRegressor gp;
    gp.t_ = t;
    gp.u_ = u;
    gp.cfg_ = cfg;
    double jitter = cfg.noise_variance == 0.0 ? 1e-8 : 0.0;
    for (;;) {
        Matrix sys = k;
        sys.diagonal().array() += cfg.noise_variance + jitter;
        gp.chol_.compute(sys);
        if (gp.chol_.info() == Eigen::Success) break;
        jitter = jitter == 0.0 ? 1e-8 : jitter * 10.0;
        if (jitter > 1e-2) {
            throw numeric_error("gp: kernel matrix not factorizable after jitter escalation");
        }
    }
    gp.jitter_ = jitter;
    gp.alpha_ = gp.chol_.solve(u);
    return gp;
}

GpRegressor::Prediction GpRegressor::predict(const Vector& t_new) const {
    const Index n = t_.size();
    const Index m = t_new.size();
    Matrix cross(n, m);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < m; ++j) cross(i, j) = kernel(t_(i), t_new(j), cfg_);
    }
    Prediction out;
    out.mean = cross.transpose() * alpha_;
    const Matrix solved = chol_.solve(cross);
    out.variance.resize(m);
    for (Index j = 0; j < m; ++j) {
        const double v = cfg_.signal_variance - cross.col(j).dot(solved.col(j));
        out.variance(j) = v > 0.0 ? v : 0.0;
    }
    return out;
}

} // namespace dlpls
