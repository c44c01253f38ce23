#include "dlpls/diagnostics.hpp"

#include "dlpls/errors.hpp"

#include <cmath>

namespace dlpls {

BiplotData biplot(const StandardizedMatrix& x, bool distance_scaling) {
    const SvdResult dec = svd(x.values);
    if (numerical_rank(dec, x.n(), x.cols()) < 2) {
        throw data_error("biplot: needs rank >= 2");
    }
    BiplotData out;
    out.distance_scaling = distance_scaling;
    out.sample_coords = dec.left.leftCols(2) * dec.singular_values.head(2).asDiagonal();
    out.variable_coords = dec.right.leftCols(2);
    if (distance_scaling) {
        out.variable_coords = out.variable_coords * dec.singular_values.head(2).asDiagonal();
        out.sample_coords = dec.left.leftCols(2);
    }
    return out;
}

namespace {

// Correlation with a constant column is undefined; the caller flags it.
bool corr_with(const Vector& v, const Vector& score, double& out) {
    const Vector vc = v.array() - v.mean();
    const Vector sc = score.array() - score.mean();
    const double denom = vc.norm() * sc.norm();
    if (denom == 0.0) {
        out = 0.0;
        return false;
    }
    out = vc.dot(sc) / denom;
    return true;
}

std::vector<std::string> default_names(const std::string& prefix, Index count) {
    std::vector<std::string> names;
    for (Index i = 1; i <= count; ++i) names.push_back(prefix + std::to_string(i));
    return names;
}

} // namespace

CorrelationCircleData correlation_circle(const Matrix& x_raw, const Matrix& y_raw,
                                         const PlsModel& pls, std::vector<std::string> x_names,
                                         std::vector<std::string> y_names) {
    if (pls.n_components < 2) throw data_error("correlation_circle: needs L >= 2");
    if (x_raw.rows() != pls.x_scores.rows()) {
        throw data_error("correlation_circle: blocks must match the training rows");
    }
    if (x_names.empty()) x_names = default_names("x", x_raw.cols());
    if (y_names.empty()) y_names = default_names("y", y_raw.cols());

    const Vector t1 = pls.x_scores.col(0);
    const Vector t2 = pls.x_scores.col(1);
    CorrelationCircleData data;
    auto add_block = [&](const Matrix& block, const std::vector<std::string>& names,
                         const std::string& group) {
        for (Index j = 0; j < block.cols(); ++j) {
            CorrelationCirclePoint pt;
            pt.group = group;
            pt.name = names[static_cast<std::size_t>(j)];
            const bool ok1 = corr_with(block.col(j), t1, pt.r1);
            const bool ok2 = corr_with(block.col(j), t2, pt.r2);
            pt.flagged = !(ok1 && ok2);
            data.points.push_back(std::move(pt));
        }
    };
    add_block(x_raw, x_names, "X");
    add_block(y_raw, y_names, "Y");
    return data;
}

std::vector<ScaleFactorRow> scale_factor_curves(const StandardizedMatrix& x,
                                                const Matrix& y_std,
                                                const std::vector<Index>& pls_components) {
    const Index p = x.cols();
    const EigenSpectrum spectrum =
        sym_eigen(x.values.transpose() * x.values / static_cast<double>(x.n() - 1));

    std::vector<ScaleFactorRow> rows;
    for (Index out_col = 0; out_col < y_std.cols(); ++out_col) {
        const Vector y = y_std.col(out_col);
        const Vector alpha = alpha_ols(x, y);
        for (const Index K : pls_components) {
            ShrinkageParams pls_params;
            pls_params.components = K;
            const FactorResult f_pls = scale_factors(ShrinkageMethod::Pls, x, y, pls_params);
            const NormalizationRecord norm =
                normalize_overall_shrinkage(x, y, ShrinkageMethod::Pls, pls_params);

            ShrinkageParams pcr_params;
            pcr_params.components = norm.pcr_components;
            const FactorResult f_pcr = scale_factors(ShrinkageMethod::Pcr, x, y, pcr_params);

            ShrinkageParams rr_params;
            rr_params.lambda = norm.lambda;
            const FactorResult f_rr = std::isfinite(norm.lambda)
                                          ? scale_factors(ShrinkageMethod::Ridge, x, y, rr_params)
                                          : FactorResult{Vector::Zero(p), {}, Vector::Zero(p)};

            auto push = [&](const std::string& method, const std::string& param,
                            const Vector& f) {
                for (Index j = 0; j < p; ++j) {
                    ScaleFactorRow row;
                    row.output = out_col;
                    row.method = method;
                    row.param = param;
                    row.j = j + 1;
                    row.eigenvalue = spectrum.eigenvalues(j);
                    row.alpha = alpha(j);
                    row.f = f(j);
                    rows.push_back(std::move(row));
                }
            };
            push("PLS", "K=" + std::to_string(K), f_pls.f);
            push("PCR", "L=" + std::to_string(norm.pcr_components), f_pcr.f);
            push("RR", "lambda=" + format_double(norm.lambda), f_rr.f);
        }
    }
    return rows;
}

CsvTable scree_table(const Vector& values) {
    CsvTable t;
    t.header = {"component", "singular_value"};
    for (Index i = 0; i < values.size(); ++i) {
        t.rows.push_back({std::to_string(i + 1), format_double(values(i))});
    }
    return t;
}

CsvTable biplot_table(const BiplotData& data, const std::vector<std::string>& variable_names) {
    CsvTable t;
    t.header = {"kind", "label", "dim1", "dim2"};
    for (Index i = 0; i < data.sample_coords.rows(); ++i) {
        t.rows.push_back({"sample", std::to_string(i + 1),
                          format_double(data.sample_coords(i, 0)),
                          format_double(data.sample_coords(i, 1))});
    }
    for (Index j = 0; j < data.variable_coords.rows(); ++j) {
        const std::string label = static_cast<std::size_t>(j) < variable_names.size()
                                      ? variable_names[static_cast<std::size_t>(j)]
                                      : "x" + std::to_string(j + 1);
        t.rows.push_back({"variable", label, format_double(data.variable_coords(j, 0)),
                          format_double(data.variable_coords(j, 1))});
    }
    return t;
}

CsvTable correlation_circle_table(const CorrelationCircleData& data) {
    CsvTable t;
    t.header = {"group", "variable", "corr_t1", "corr_t2", "flagged"};
    for (const auto& pt : data.points) {
        t.rows.push_back({pt.group, pt.name, format_double(pt.r1), format_double(pt.r2),
                          pt.flagged ? "1" : "0"});
    }
    return t;
}

CsvTable scale_factor_table(const std::vector<ScaleFactorRow>& rows) {
    CsvTable t;
    t.header = {"output", "method", "param", "j", "eigenvalue", "alpha", "f"};
    for (const auto& row : rows) {
        t.rows.push_back({std::to_string(row.output), row.method, row.param,
                          std::to_string(row.j), format_double(row.eigenvalue),
                          format_double(row.alpha), format_double(row.f)});
    }
    return t;
}

CsvTable link_grid_table(const LinkSmoother& link) {
    CsvTable t;
    t.header = {"u", "g_hat"};
    for (Index i = 0; i < link.grid.size(); ++i) {
        t.rows.push_back({format_double(link.grid(i)), format_double(link.values(i))});
    }
    return t;
}

CsvTable link_scatter_table(const Vector& index, const Vector& y) {
    if (index.size() != y.size()) throw data_error("link_scatter_table: size mismatch");
    CsvTable t;
    t.header = {"index", "y"};
    for (Index i = 0; i < index.size(); ++i) {
        t.rows.push_back({format_double(index(i)), format_double(y(i))});
    }
    return t;
}

} // namespace dlpls
