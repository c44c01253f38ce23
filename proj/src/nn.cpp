#include "dlpls/nn.hpp"

#include "dlpls/errors.hpp"
#include "dlpls/rng.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace dlpls {

namespace {

Matrix activate(const Matrix& z, Activation a) {
    switch (a) {
        case Activation::Relu: return z.cwiseMax(0.0);
        case Activation::Tanh: return z.array().tanh();
        case Activation::Identity: return z;
    }
    return z;
}

Matrix activate_grad(const Matrix& z, Activation a) {
    switch (a) {
        case Activation::Relu:
            return (z.array() > 0.0).cast<double>();
        case Activation::Tanh:
            return 1.0 - z.array().tanh().square();
        case Activation::Identity:
            return Matrix::Ones(z.rows(), z.cols());
    }
    return Matrix::Ones(z.rows(), z.cols());
}

double mse(const Matrix& pred, const Matrix& target) {
    return (pred - target).squaredNorm() / static_cast<double>(target.size());
}

void validate(const MlpConfig& cfg) {
    for (const Index w : cfg.hidden) {
        if (w < 1) throw data_error("mlp: hidden widths must be >= 1");
    }
    if (cfg.epochs < 1) throw data_error("mlp: epochs must be >= 1");
    if (cfg.batch_size < 1) throw data_error("mlp: batch size must be >= 1");
    if (!(cfg.learning_rate > 0.0)) throw data_error("mlp: learning rate must be positive");
}

} // namespace

std::string activation_name(Activation a) {
    switch (a) {
        case Activation::Relu: return "relu";
        case Activation::Tanh: return "tanh";
        case Activation::Identity: return "identity";
    }
    return "relu";
}

Activation activation_from_name(const std::string& name) {
    if (name == "relu") return Activation::Relu;
    if (name == "tanh") return Activation::Tanh;
    if (name == "identity") return Activation::Identity;
    throw data_error("unknown activation: " + name);
}

Matrix MlpNetwork::forward(const Matrix& input) const {
    Matrix z = input;
    for (std::size_t l = 0; l < weights.size(); ++l) {
        Matrix pre = (z * weights[l]).rowwise() + biases[l];
        z = l + 1 < weights.size() ? activate(pre, activation) : std::move(pre);
    }
    return z;
}

MlpFit train_mlp(const Matrix& input, const Matrix& target, const MlpConfig& cfg) {
    validate(cfg);
    const Index n = input.rows();
    if (target.rows() != n) throw data_error("mlp: input/target row mismatch");
    if (!input.allFinite() || !target.allFinite()) {
        throw data_error("mlp: non-finite training data");
    }

    std::vector<Index> widths;
    widths.push_back(input.cols());
    widths.insert(widths.end(), cfg.hidden.begin(), cfg.hidden.end());
    widths.push_back(target.cols());

    MlpFit fit;
    fit.config = cfg;
    fit.net.activation = cfg.activation;
    Rng rng(cfg.seed);
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        const double s = cfg.init_scale > 0.0
                             ? cfg.init_scale
                             : 1.0 / std::sqrt(static_cast<double>(widths[l]));
        Matrix w(widths[l], widths[l + 1]);
        for (Index i = 0; i < w.rows(); ++i) {
            for (Index j = 0; j < w.cols(); ++j) w(i, j) = rng.uniform(-s, s);
        }
        fit.net.weights.push_back(std::move(w));
        fit.net.biases.push_back(Eigen::RowVectorXd::Zero(widths[l + 1]));
    }

    fit.initial_loss = mse(fit.net.forward(input), target);

    const auto n_layers = fit.net.weights.size();
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});

    for (Index epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(order);
        for (Index start = 0; start < n; start += cfg.batch_size) {
            const Index count = std::min(cfg.batch_size, n - start);
            Matrix batch_x(count, input.cols());
            Matrix batch_y(count, target.cols());
            for (Index r = 0; r < count; ++r) {
                batch_x.row(r) = input.row(order[static_cast<std::size_t>(start + r)]);
                batch_y.row(r) = target.row(order[static_cast<std::size_t>(start + r)]);
            }

            // forward, keeping pre-activations
            std::vector<Matrix> acts;  // post-activation per layer input
            std::vector<Matrix> pres;
            acts.push_back(batch_x);
            for (std::size_t l = 0; l < n_layers; ++l) {
                Matrix pre = (acts.back() * fit.net.weights[l]).rowwise() + fit.net.biases[l];
                pres.push_back(pre);
                acts.push_back(l + 1 < n_layers ? activate(pre, cfg.activation) : pre);
            }

            // backprop of d(MSE)/d(pre)
            Matrix delta = 2.0 * (acts.back() - batch_y) /
                           static_cast<double>(batch_y.size());
            for (std::size_t l = n_layers; l-- > 0;) {
                const Matrix grad_w = acts[l].transpose() * delta;
                const Eigen::RowVectorXd grad_b = delta.colwise().sum();
                if (l > 0) {
                    delta = (delta * fit.net.weights[l].transpose())
                                .cwiseProduct(activate_grad(pres[l - 1], cfg.activation));
                }
                fit.net.weights[l] -= cfg.learning_rate * grad_w;
                fit.net.biases[l] -= cfg.learning_rate * grad_b;
            }
        }
        const double loss = mse(fit.net.forward(input), target);
        if (!std::isfinite(loss)) {
            throw numeric_error("mlp: training diverged at epoch " + std::to_string(epoch + 1) +
                                " (non-finite loss)");
        }
        fit.loss_trace.push_back(loss);
    }
    return fit;
}

} // namespace dlpls
