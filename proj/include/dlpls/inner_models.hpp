#pragma once

#include "dlpls/gp.hpp"
#include "dlpls/nn.hpp"
#include "dlpls/pls.hpp"
#include "dlpls/tree.hpp"

#include <json.hpp>

#include <memory>
#include <string>
#include <vector>

namespace dlpls {

/// The map G from X-scores to Y-scores. Implementations are immutable after
/// fitting; predict is deterministic.
class InnerModel {
public:
    virtual ~InnerModel() = default;
    virtual std::string kind() const = 0;
    virtual Matrix predict(const Matrix& t) const = 0;
    virtual nlohmann::json to_json() const = 0;
};

std::unique_ptr<InnerModel> inner_model_from_json(const nlohmann::json& j);

/// U_hat = T * coef. The coefficient matrix is the model's per-component
/// diagonal (or the full inner matrix when fit with that mode).
class LinearInner : public InnerModel {
public:
    explicit LinearInner(Matrix coef) : coef_(std::move(coef)) {}
    static std::unique_ptr<InnerModel> from_pls(const PlsModel& m);

    std::string kind() const override { return "linear"; }
    Matrix predict(const Matrix& t) const override { return t * coef_; }
    nlohmann::json to_json() const override;

    const Matrix& coefficients() const { return coef_; }

private:
    Matrix coef_;
};

class MlpInner : public InnerModel {
public:
    explicit MlpInner(MlpFit fit) : fit_(std::move(fit)) {}

    std::string kind() const override { return "mlp"; }
    Matrix predict(const Matrix& t) const override { return fit_.net.forward(t); }
    nlohmann::json to_json() const override;

    const MlpFit& fit() const { return fit_; }

private:
    MlpFit fit_;
};

/// Independent one-dimensional GPs, one per score pair (t_k, u_k).
class GpInner : public InnerModel {
public:
    explicit GpInner(std::vector<GpRegressor> gps) : gps_(std::move(gps)) {}

    std::string kind() const override { return "gp"; }
    Matrix predict(const Matrix& t) const override;
    Matrix predict_variance(const Matrix& t) const;
    nlohmann::json to_json() const override;

    const std::vector<GpRegressor>& regressors() const { return gps_; }

private:
    std::vector<GpRegressor> gps_;
};

/// One PLS tree per Y-score column, each grown on the full score block.
class TreeInner : public InnerModel {
public:
    explicit TreeInner(std::vector<PlsTree> trees) : trees_(std::move(trees)) {}

    std::string kind() const override { return "tree"; }
    Matrix predict(const Matrix& t) const override;
    nlohmann::json to_json() const override;

    const std::vector<PlsTree>& trees() const { return trees_; }

private:
    std::vector<PlsTree> trees_;
};

std::unique_ptr<InnerModel> fit_mlp(const Matrix& t, const Matrix& u, const MlpConfig& cfg);

/// Bottleneck network t -> l1 -> u with l1 < L columns of t.
std::unique_ptr<InnerModel> fit_autoencoder(const Matrix& t, const Matrix& u, Index bottleneck,
                                            MlpConfig cfg);

std::unique_ptr<InnerModel> fit_gp_inner(const Matrix& t, const Matrix& u, const GpConfig& cfg);

std::unique_ptr<InnerModel> fit_tree_inner(const Matrix& t, const Matrix& u,
                                           const TreeConfig& cfg);

/// Direct PLS-tree on a data block (single response).
PlsTree fit_pls_tree(const Matrix& x, const Vector& y, const TreeConfig& cfg);

/// Full composed prediction: project raw rows to scores with the stored
/// training standardization, apply the inner model, map Y-scores back
/// through the loadings and destandardize.
Matrix predict_pipeline(const PlsModel& pls, const InnerModel& inner, const Matrix& x_new_raw);

} // namespace dlpls
