#pragma once

#include "dlpls/linalg.hpp"

#include <string>
#include <vector>

namespace dlpls {

/// What to do with rows containing NaN/Inf cells at ingestion.
enum class NonFiniteRule { Reject, DropRow };

struct CsvOptions {
    char delimiter = ',';
    NonFiniteRule non_finite = NonFiniteRule::Reject;
};

/// Ingested numeric table with designated output columns.
struct RawTable {
    std::vector<std::string> column_names;
    Matrix values;                      // n x m, all finite
    std::vector<Index> output_columns;  // sorted, unique
    Index rejected_rows = 0;

    Index n() const { return values.rows(); }
    Index n_outputs() const { return static_cast<Index>(output_columns.size()); }
    Index n_inputs() const { return values.cols() - n_outputs(); }

    bool is_output(Index col) const;
    std::vector<Index> input_columns() const;

    Matrix x_block() const;
    Matrix y_block() const;
    std::vector<std::string> x_names() const;
    std::vector<std::string> y_names() const;
};

RawTable load_csv(const std::string& path, const std::vector<std::string>& output_names,
                  const CsvOptions& opts = {});
RawTable load_csv(const std::string& path, const std::vector<Index>& output_indices,
                  const CsvOptions& opts = {});

enum class ColumnTransform { None, Log, Log1p, Sqrt };

ColumnTransform transform_from_name(const std::string& name);
std::string transform_name(ColumnTransform t);

/// Per-column transform tags, same length as the table width.
struct TransformSpec {
    std::vector<ColumnTransform> tags;

    static TransformSpec none(Index width);
    /// Recorded default for the UCI white-wine table: log1p on the
    /// right-skewed concentration columns, untouched otherwise. Matches by
    /// column name; outputs and unknown names get None.
    static TransformSpec wine_default(const std::vector<std::string>& column_names);
};

/// Applies tags column-wise. Domain violations (log of nonpositive, sqrt of
/// negative) are errors, never clamped. Column names gain a tag annotation.
RawTable apply_transforms(const RawTable& t, const TransformSpec& spec);

struct ExpansionSpec {
    bool include_linear = true;
    bool include_quadratics = false;
    bool include_pairwise_interactions = false;

    static ExpansionSpec all() { return {true, true, true}; }
    Index expanded_count(Index p) const;
};

/// Column blocks in order: linear, quadratics, interactions (i<j by index).
Matrix expand_features(const Matrix& x_block, const ExpansionSpec& spec);
std::vector<std::string> expanded_names(const std::vector<std::string>& base,
                                        const ExpansionSpec& spec);

/// Column-standardized matrix with the parameters needed to invert the map
/// or to standardize new data with training statistics.
struct StandardizedMatrix {
    Matrix values;
    Vector means;
    Vector scales;                        // sample standard deviations (n-1)
    std::vector<std::uint8_t> degenerate; // constant columns, scale kept at 1

    Index n() const { return values.rows(); }
    Index cols() const { return values.cols(); }

    /// Standardize new rows with the stored training parameters.
    Matrix apply(const Matrix& x_new) const;
    /// Map standardized rows back to original units.
    Matrix invert(const Matrix& std_rows) const;
};

StandardizedMatrix standardize(const Matrix& x_block);
Matrix destandardize(const StandardizedMatrix& s);

} // namespace dlpls
