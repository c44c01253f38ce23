#include "dlpls/inner_models.hpp"

#include "dlpls/errors.hpp"

#include <string>

namespace dlpls {

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

std::unique_ptr<InnerModel> LinearInner::from_pls(const PlsModel& m) {
    if (m.inner_mode == InnerRelation::FullMatrix) {
        return std::make_unique<LinearInner>(m.inner_full);
    }
    return std::make_unique<LinearInner>(Matrix(m.inner_diag.asDiagonal()));
}

nlohmann::json LinearInner::to_json() const {
    nlohmann::json j;
    j["kind"] = "linear";
    j["coefficients"] = matrix_to_json(coef_);
    return j;
}

nlohmann::json MlpInner::to_json() const {
    nlohmann::json j;
    j["kind"] = "mlp";
    j["activation"] = activation_name(fit_.net.activation);
    nlohmann::json layers = nlohmann::json::array();
    for (std::size_t l = 0; l < fit_.net.weights.size(); ++l) {
        nlohmann::json layer;
        layer["weights"] = matrix_to_json(fit_.net.weights[l]);
        layer["biases"] = vector_to_json(fit_.net.biases[l].transpose());
        layers.push_back(std::move(layer));
    }
    j["layers"] = std::move(layers);
    j["loss_trace"] = fit_.loss_trace;
    j["initial_loss"] = fit_.initial_loss;
    return j;
}

Matrix GpInner::predict(const Matrix& t) const {
    if (t.cols() != static_cast<Index>(gps_.size())) {
        throw data_error("gp inner model expects " + std::to_string(gps_.size()) +
                         " score columns, got " + std::to_string(t.cols()));
    }
    Matrix out(t.rows(), t.cols());
    for (std::size_t k = 0; k < gps_.size(); ++k) {
        out.col(static_cast<Index>(k)) = gps_[k].predict(t.col(static_cast<Index>(k))).mean;
    }
    return out;
}

Matrix GpInner::predict_variance(const Matrix& t) const {
    Matrix out(t.rows(), t.cols());
    for (std::size_t k = 0; k < gps_.size(); ++k) {
        out.col(static_cast<Index>(k)) = gps_[k].predict(t.col(static_cast<Index>(k))).variance;
    }
    return out;
}

nlohmann::json GpInner::to_json() const {
    nlohmann::json j;
    j["kind"] = "gp";
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& gp : gps_) {
        nlohmann::json part;
        part["inputs"] = vector_to_json(gp.train_inputs());
        part["targets"] = vector_to_json(gp.train_targets());
        part["lengthscale"] = gp.config().lengthscale;
        part["signal_variance"] = gp.config().signal_variance;
        part["noise_variance"] = gp.config().noise_variance;
        parts.push_back(std::move(part));
    }
    j["scores"] = std::move(parts);
    return j;
}

Matrix TreeInner::predict(const Matrix& t) const {
    Matrix out(t.rows(), static_cast<Index>(trees_.size()));
    for (std::size_t k = 0; k < trees_.size(); ++k) {
        out.col(static_cast<Index>(k)) = trees_[k].predict(t);
    }
    return out;
}

namespace {

nlohmann::json tree_to_json(const PlsTree& tree) {
    nlohmann::json j;
    j["a"] = tree.config().a;
    j["b"] = tree.config().b;
    j["min_leaf"] = tree.config().min_leaf;
    j["max_depth"] = tree.config().max_depth;
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& node : tree.nodes()) {
        nlohmann::json nj;
        nj["leaf"] = node.leaf;
        nj["prediction"] = node.prediction;
        if (!node.leaf) {
            nj["direction"] = vector_to_json(node.direction);
            nj["x_center"] = vector_to_json(node.x_center);
            nj["split_value"] = node.split_value;
            nj["high_child"] = node.high_child;
            nj["low_child"] = node.low_child;
        }
        nodes.push_back(std::move(nj));
    }
    j["nodes"] = std::move(nodes);
    return j;
}

} // namespace

nlohmann::json TreeInner::to_json() const {
    nlohmann::json j;
    j["kind"] = "tree";
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& tree : trees_) parts.push_back(tree_to_json(tree));
    j["scores"] = std::move(parts);
    return j;
}

std::unique_ptr<InnerModel> fit_mlp(const Matrix& t, const Matrix& u, const MlpConfig& cfg) {
    return std::make_unique<MlpInner>(train_mlp(t, u, cfg));
}

std::unique_ptr<InnerModel> fit_autoencoder(const Matrix& t, const Matrix& u, Index bottleneck,
                                            MlpConfig cfg) {
    if (bottleneck >= t.cols()) {
        throw data_error("autoencoder: bottleneck width " + std::to_string(bottleneck) +
                         " must be smaller than the score count " + std::to_string(t.cols()));
    }
    if (bottleneck < 1) throw data_error("autoencoder: bottleneck width must be >= 1");
    cfg.hidden = {bottleneck};
    return std::make_unique<MlpInner>(train_mlp(t, u, cfg));
}

std::unique_ptr<InnerModel> fit_gp_inner(const Matrix& t, const Matrix& u, const GpConfig& cfg) {
    if (t.rows() != u.rows() || t.cols() != u.cols()) {
        throw data_error("gp inner model: score blocks must have matching shapes");
    }
    std::vector<GpRegressor> gps;
    gps.reserve(static_cast<std::size_t>(t.cols()));
    for (Index k = 0; k < t.cols(); ++k) {
        gps.push_back(GpRegressor::fit(t.col(k), u.col(k), cfg));
    }
    return std::make_unique<GpInner>(std::move(gps));
}

std::unique_ptr<InnerModel> fit_tree_inner(const Matrix& t, const Matrix& u,
                                           const TreeConfig& cfg) {
    if (t.rows() != u.rows()) throw data_error("tree inner model: row mismatch");
    std::vector<PlsTree> trees;
    trees.reserve(static_cast<std::size_t>(u.cols()));
    for (Index k = 0; k < u.cols(); ++k) {
        trees.push_back(PlsTree::fit(t, u.col(k), cfg));
    }
    return std::make_unique<TreeInner>(std::move(trees));
}

PlsTree fit_pls_tree(const Matrix& x, const Vector& y, const TreeConfig& cfg) {
    return PlsTree::fit(x, y, cfg);
}

Matrix predict_pipeline(const PlsModel& pls, const InnerModel& inner, const Matrix& x_new_raw) {
    const Matrix t = scores(pls, x_new_raw);
    const Matrix u = inner.predict(t);
    if (u.cols() != pls.n_components) {
        throw data_error("inner model returned " + std::to_string(u.cols()) +
                         " score columns, expected " + std::to_string(pls.n_components));
    }
    return pls.destandardize_y(u * pls.y_loadings.transpose());
}

std::unique_ptr<InnerModel> inner_model_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "linear") {
        return std::make_unique<LinearInner>(matrix_from_json(j.at("coefficients")));
    }
    if (kind == "mlp") {
        MlpFit fit;
        fit.net.activation = activation_from_name(j.at("activation").get<std::string>());
        for (const auto& layer : j.at("layers")) {
            fit.net.weights.push_back(matrix_from_json(layer.at("weights")));
            fit.net.biases.push_back(vector_from_json(layer.at("biases")).transpose());
        }
        fit.loss_trace = j.value("loss_trace", std::vector<double>{});
        fit.initial_loss = j.value("initial_loss", 0.0);
        return std::make_unique<MlpInner>(std::move(fit));
    }
    if (kind == "gp") {
        std::vector<GpRegressor> gps;
        for (const auto& part : j.at("scores")) {
            GpConfig cfg;
            cfg.lengthscale = part.at("lengthscale").get<double>();
            cfg.signal_variance = part.at("signal_variance").get<double>();
            cfg.noise_variance = part.at("noise_variance").get<double>();
            gps.push_back(GpRegressor::fit(vector_from_json(part.at("inputs")),
                                           vector_from_json(part.at("targets")), cfg));
        }
        return std::make_unique<GpInner>(std::move(gps));
    }
    if (kind == "tree") {
        std::vector<PlsTree> trees;
        for (const auto& part : j.at("scores")) {
            TreeConfig cfg;
            cfg.a = part.at("a").get<double>();
            cfg.b = part.at("b").get<double>();
            cfg.min_leaf = part.at("min_leaf").get<Index>();
            cfg.max_depth = part.at("max_depth").get<Index>();
            std::vector<PlsTree::Node> nodes;
            for (const auto& nj : part.at("nodes")) {
                PlsTree::Node node;
                node.leaf = nj.at("leaf").get<bool>();
                node.prediction = nj.at("prediction").get<double>();
                if (!node.leaf) {
                    node.direction = vector_from_json(nj.at("direction"));
                    node.x_center = vector_from_json(nj.at("x_center"));
                    node.split_value = nj.at("split_value").get<double>();
                    node.high_child = nj.at("high_child").get<int>();
                    node.low_child = nj.at("low_child").get<int>();
                }
                nodes.push_back(std::move(node));
            }
            trees.push_back(PlsTree::from_parts(std::move(nodes), cfg));
        }
        return std::make_unique<TreeInner>(std::move(trees));
    }
    throw data_error("unknown inner model kind: " + kind);
}

} // namespace dlpls
