#include "dlpls/simulation.hpp"

#include "dlpls/errors.hpp"
#include "dlpls/rng.hpp"

#include <cmath>

namespace dlpls {

namespace {

Matrix standard_normal(Index n, Index p, Rng& rng) {
    Matrix x(n, p);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < p; ++j) x(i, j) = rng.normal();
    }
    return x;
}

// Nearest PSD projection by clipping negative eigenvalues at zero.
Matrix nearest_psd(const Matrix& a, bool& projected) {
    const Matrix sym = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> dec(sym);
    Vector vals = dec.eigenvalues();
    projected = false;
    for (Index i = 0; i < vals.size(); ++i) {
        if (vals(i) < 0.0) {
            vals(i) = 0.0;
            projected = true;
        }
    }
    if (!projected) return sym;
    return dec.eigenvectors() * vals.asDiagonal() * dec.eigenvectors().transpose();
}

Matrix covariance_sqrt(const Matrix& cov) {
    Eigen::SelfAdjointEigenSolver<Matrix> dec(cov);
    Vector vals = dec.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return dec.eigenvectors() * vals.asDiagonal() * dec.eigenvectors().transpose();
}

} // namespace

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::ReluIndex: return "relu_index";
        case Scenario::TanhIndex: return "tanh_index";
        case Scenario::LogAbs: return "log_abs";
        case Scenario::TwoOutput: return "two_output";
    }
    return "?";
}

Scenario scenario_from_name(const std::string& name) {
    if (name == "relu_index") return Scenario::ReluIndex;
    if (name == "tanh_index") return Scenario::TanhIndex;
    if (name == "log_abs") return Scenario::LogAbs;
    if (name == "two_output") return Scenario::TwoOutput;
    throw data_error("unknown scenario: " + name);
}

SimData generate(const SimSpec& spec) {
    if (spec.n < 1) throw data_error("generate: n must be >= 1");
    Rng rng(spec.seed);
    SimData data;

    switch (spec.scenario) {
        case Scenario::ReluIndex:
        case Scenario::TanhIndex: {
            if (spec.p < 1) throw data_error("generate: p must be >= 1");
            Vector beta(spec.p);
            for (Index j = 0; j < spec.p; ++j) beta(j) = rng.normal();
            data.x = standard_normal(spec.n, spec.p, rng);
            data.y.resize(spec.n, 1);
            const bool relu = spec.scenario == Scenario::ReluIndex;
            for (Index i = 0; i < spec.n; ++i) {
                const double u = data.x.row(i).dot(beta);
                const double g = relu ? std::max(u, 0.0) : std::tanh(u);
                data.y(i, 0) = g + spec.noise_scale * spec.noise_sd * rng.normal();
            }
            data.true_b = beta.transpose();
            data.noise_cov = Matrix::Constant(1, 1, spec.noise_sd * spec.noise_sd);
            return data;
        }
        case Scenario::LogAbs: {
            Vector b(4);
            b << 1, 2, 0, 0;
            data.x = standard_normal(spec.n, 4, rng);
            data.y.resize(spec.n, 1);
            const double noise_var = 0.005;
            for (Index i = 0; i < spec.n; ++i) {
                data.y(i, 0) = std::log(std::abs(1.0 + data.x.row(i).dot(b))) +
                               spec.noise_scale * std::sqrt(noise_var) * rng.normal();
            }
            data.true_b = b.transpose();
            data.noise_cov = Matrix::Constant(1, 1, noise_var);
            return data;
        }
        case Scenario::TwoOutput: {
            Vector b1(4), b2(4);
            b1 << 0, 0, 2, 2;
            b2 << 1, 2, 0, 0;
            // The stated cross-output covariance has off-diagonals larger
            // than the diagonals and is not PSD; clip its spectrum at zero.
            Matrix stated(2, 2);
            stated << 0.001, 0.005, 0.005, 0.001;
            data.noise_cov = nearest_psd(stated, data.cov_projected);
            const Matrix root = spec.noise_scale * covariance_sqrt(data.noise_cov);

            data.x = standard_normal(spec.n, 4, rng);
            data.y.resize(spec.n, 2);
            for (Index i = 0; i < spec.n; ++i) {
                Vector z(2);
                z << rng.normal(), rng.normal();
                const Vector eps = root * z;
                data.y(i, 0) = data.x.row(i).dot(b1) + eps(0);
                data.y(i, 1) = std::log(std::abs(1.0 + data.x.row(i).dot(b2))) + eps(1);
            }
            data.true_b.resize(2, 4);
            data.true_b.row(0) = b1.transpose();
            data.true_b.row(1) = b2.transpose();
            return data;
        }
    }
    throw data_error("generate: unknown scenario");
}

Matrix scenario_mean(Scenario s, const Matrix& x, const Matrix& true_b) {
    const Index n = x.rows();
    switch (s) {
        case Scenario::ReluIndex:
        case Scenario::TanhIndex: {
            Matrix y(n, 1);
            for (Index i = 0; i < n; ++i) {
                const double u = x.row(i).dot(true_b.row(0));
                y(i, 0) = s == Scenario::ReluIndex ? std::max(u, 0.0) : std::tanh(u);
            }
            return y;
        }
        case Scenario::LogAbs: {
            Matrix y(n, 1);
            for (Index i = 0; i < n; ++i) {
                y(i, 0) = std::log(std::abs(1.0 + x.row(i).dot(true_b.row(0))));
            }
            return y;
        }
        case Scenario::TwoOutput: {
            Matrix y(n, 2);
            for (Index i = 0; i < n; ++i) {
                y(i, 0) = x.row(i).dot(true_b.row(0));
                y(i, 1) = std::log(std::abs(1.0 + x.row(i).dot(true_b.row(1))));
            }
            return y;
        }
    }
    throw data_error("scenario_mean: unknown scenario");
}

} // namespace dlpls
