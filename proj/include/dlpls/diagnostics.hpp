#pragma once

#include "dlpls/brillinger.hpp"
#include "dlpls/csv.hpp"
#include "dlpls/dataset.hpp"
#include "dlpls/pls.hpp"
#include "dlpls/shrinkage.hpp"

#include <string>
#include <vector>

namespace dlpls {

/// Rank-2 SVD display of standardized X. Sample coordinates are U * diag(s),
/// variable coordinates the right singular vectors (form scaling); the
/// distance flag scales variable coordinates by the singular values instead.
struct BiplotData {
    Matrix sample_coords;    // n x 2
    Matrix variable_coords;  // p x 2
    bool distance_scaling = false;
};

BiplotData biplot(const StandardizedMatrix& x, bool distance_scaling = false);

struct CorrelationCirclePoint {
    std::string group;  // "X" or "Y"
    std::string name;
    double r1 = 0.0;  // correlation with t1
    double r2 = 0.0;  // correlation with t2
    bool flagged = false;  // constant variable, coordinates forced to zero
};

struct CorrelationCircleData {
    std::vector<CorrelationCirclePoint> points;
};

/// Pearson correlations of each raw training variable with the first two
/// fitted X-scores. Blocks must be the training rows the model was fit on.
CorrelationCircleData correlation_circle(const Matrix& x_raw, const Matrix& y_raw,
                                         const PlsModel& pls,
                                         std::vector<std::string> x_names = {},
                                         std::vector<std::string> y_names = {});

struct ScaleFactorRow {
    Index output = 0;     // Y column index
    std::string method;   // RR / PCR / PLS
    std::string param;    // K, matched L, or matched lambda
    Index j = 0;          // eigen-direction, 1-based
    double eigenvalue = 0.0;
    double alpha = 0.0;
    double f = 0.0;
};

/// Long-format factor table per output column and per PLS component count.
/// For each K the PCR count and ridge penalty are matched to the PLS
/// coefficient norm via normalize_overall_shrinkage.
std::vector<ScaleFactorRow> scale_factor_curves(const StandardizedMatrix& x,
                                                const Matrix& y_std,
                                                const std::vector<Index>& pls_components);

// Fixed CSV schemas for the emitted artifacts.
CsvTable scree_table(const Vector& values);
CsvTable biplot_table(const BiplotData& data, const std::vector<std::string>& variable_names);
CsvTable correlation_circle_table(const CorrelationCircleData& data);
CsvTable scale_factor_table(const std::vector<ScaleFactorRow>& rows);
CsvTable link_grid_table(const LinkSmoother& link);
CsvTable link_scatter_table(const Vector& index, const Vector& y);

} // namespace dlpls
