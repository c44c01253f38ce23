#pragma once

#include "dlpls/linalg.hpp"

#include <cstdint>
#include <vector>

namespace dlpls {

enum class Activation { Relu, Tanh, Identity };

std::string activation_name(Activation a);
Activation activation_from_name(const std::string& name);

struct MlpConfig {
    std::vector<Index> hidden;
    Activation activation = Activation::Relu;
    double learning_rate = 0.01;
    Index epochs = 200;
    Index batch_size = 32;
    std::uint64_t seed = 0;
    double init_scale = 0.0;  // 0 -> 1/sqrt(fan_in)
};

/// Plain feed-forward network, linear output layer, trained by seeded
/// mini-batch SGD on mean squared error. Single-threaded and fully
/// deterministic given (data, config).
struct MlpNetwork {
    std::vector<Matrix> weights;              // layer l: in_l x out_l
    std::vector<Eigen::RowVectorXd> biases;
    Activation activation = Activation::Relu;

    Matrix forward(const Matrix& input) const;
};

struct MlpFit {
    MlpNetwork net;
    double initial_loss = 0.0;
    std::vector<double> loss_trace;  // full-pass MSE after each epoch
    MlpConfig config;
};

MlpFit train_mlp(const Matrix& input, const Matrix& target, const MlpConfig& cfg);

} // namespace dlpls
