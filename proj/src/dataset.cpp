#include "dlpls/dataset.hpp"

#include "dlpls/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace dlpls {

namespace {

std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (std::isspace(static_cast<unsigned char>(s[b])) != 0)) ++b;
    while (e > b && (std::isspace(static_cast<unsigned char>(s[e - 1])) != 0)) --e;
    std::string out = s.substr(b, e - b);
    if (out.size() >= 2 && out.front() == '"' && out.back() == '"') {
        out = out.substr(1, out.size() - 2);
    }
    return out;
}

std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, delim)) cells.push_back(strip(cell));
    if (!line.empty() && line.back() == delim) cells.emplace_back();
    return cells;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto res = std::from_chars(first, last, value, std::chars_format::general);
    if (res.ec != std::errc() || res.ptr != last || cell.empty()) {
        throw data_error("non-numeric cell '" + cell + "' at row " + std::to_string(row) +
                         ", column " + std::to_string(col));
    }
    return value;
}

RawTable finish_table(std::vector<std::string> names, std::vector<std::vector<double>> rows,
                      std::vector<Index> outputs, Index rejected) {
    std::sort(outputs.begin(), outputs.end());
    outputs.erase(std::unique(outputs.begin(), outputs.end()), outputs.end());
    for (Index c : outputs) {
        if (c < 0 || c >= static_cast<Index>(names.size())) {
            throw data_error("output column index " + std::to_string(c) + " out of range");
        }
    }
    if (rows.empty()) throw data_error("no rows");

    RawTable t;
    t.column_names = std::move(names);
    t.output_columns = std::move(outputs);
    t.rejected_rows = rejected;
    t.values.resize(static_cast<Index>(rows.size()),
                    static_cast<Index>(t.column_names.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            t.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
        }
    }
    return t;
}

} // namespace

bool RawTable::is_output(Index col) const {
    return std::binary_search(output_columns.begin(), output_columns.end(), col);
}

std::vector<Index> RawTable::input_columns() const {
    std::vector<Index> in;
    for (Index j = 0; j < values.cols(); ++j) {
        if (!is_output(j)) in.push_back(j);
    }
    return in;
}

Matrix RawTable::x_block() const {
    const auto cols = input_columns();
    Matrix x(values.rows(), static_cast<Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) x.col(static_cast<Index>(j)) = values.col(cols[j]);
    return x;
}

Matrix RawTable::y_block() const {
    Matrix y(values.rows(), n_outputs());
    for (std::size_t j = 0; j < output_columns.size(); ++j) {
        y.col(static_cast<Index>(j)) = values.col(output_columns[j]);
    }
    return y;
}

std::vector<std::string> RawTable::x_names() const {
    std::vector<std::string> out;
    for (Index j : input_columns()) out.push_back(column_names[static_cast<std::size_t>(j)]);
    return out;
}

std::vector<std::string> RawTable::y_names() const {
    std::vector<std::string> out;
    for (Index j : output_columns) out.push_back(column_names[static_cast<std::size_t>(j)]);
    return out;
}

RawTable load_csv(const std::string& path, const std::vector<Index>& output_indices,
                  const CsvOptions& opts) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw data_error("empty file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> names = split_line(line, opts.delimiter);
    {
        std::set<std::string> seen;
        for (const auto& name : names) {
            if (!seen.insert(name).second) throw data_error("duplicate column name: " + name);
        }
    }

    std::vector<std::vector<double>> rows;
    Index rejected = 0;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split_line(line, opts.delimiter);
        if (cells.size() != names.size()) {
            throw data_error("row " + std::to_string(lineno) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(names.size()));
        }
        std::vector<double> row(cells.size());
        bool finite = true;
        for (std::size_t j = 0; j < cells.size(); ++j) {
            row[j] = parse_cell(cells[j], lineno, j);
            finite = finite && std::isfinite(row[j]);
        }
        if (!finite) {
            if (opts.non_finite == NonFiniteRule::Reject) {
                throw data_error("non-finite value at row " + std::to_string(lineno) +
                                 " (pass the drop-row policy to skip such rows)");
            }
            ++rejected;
            continue;
        }
        rows.push_back(std::move(row));
    }
    return finish_table(names, std::move(rows), output_indices, rejected);
}

RawTable load_csv(const std::string& path, const std::vector<std::string>& output_names,
                  const CsvOptions& opts) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw data_error("empty file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> names = split_line(line, opts.delimiter);

    std::vector<Index> indices;
    for (const auto& want : output_names) {
        const auto it = std::find(names.begin(), names.end(), want);
        if (it == names.end()) throw data_error("unknown output column name: " + want);
        indices.push_back(static_cast<Index>(it - names.begin()));
    }
    return load_csv(path, indices, opts);
}

ColumnTransform transform_from_name(const std::string& name) {
    if (name == "none") return ColumnTransform::None;
    if (name == "log") return ColumnTransform::Log;
    if (name == "log1p") return ColumnTransform::Log1p;
    if (name == "sqrt") return ColumnTransform::Sqrt;
    throw data_error("unknown transform tag: " + name);
}

std::string transform_name(ColumnTransform t) {
    switch (t) {
        case ColumnTransform::None: return "none";
        case ColumnTransform::Log: return "log";
        case ColumnTransform::Log1p: return "log1p";
        case ColumnTransform::Sqrt: return "sqrt";
    }
    return "none";
}

TransformSpec TransformSpec::none(Index width) {
    TransformSpec s;
    s.tags.assign(static_cast<std::size_t>(width), ColumnTransform::None);
    return s;
}

TransformSpec TransformSpec::wine_default(const std::vector<std::string>& column_names) {
    static const std::set<std::string> log1p_cols = {
        "residual sugar", "chlorides", "free sulfur dioxide", "total sulfur dioxide",
        "volatile acidity"};
    TransformSpec s;
    s.tags.reserve(column_names.size());
    for (const auto& name : column_names) {
        s.tags.push_back(log1p_cols.count(name) != 0 ? ColumnTransform::Log1p
                                                     : ColumnTransform::None);
    }
    return s;
}

RawTable apply_transforms(const RawTable& t, const TransformSpec& spec) {
    if (static_cast<Index>(spec.tags.size()) != t.values.cols()) {
        throw data_error("transform spec has " + std::to_string(spec.tags.size()) +
                         " tags for " + std::to_string(t.values.cols()) + " columns");
    }
    RawTable out = t;
    for (Index j = 0; j < out.values.cols(); ++j) {
        const auto tag = spec.tags[static_cast<std::size_t>(j)];
        if (tag == ColumnTransform::None) continue;
        for (Index i = 0; i < out.values.rows(); ++i) {
            const double v = out.values(i, j);
            switch (tag) {
                case ColumnTransform::Log:
                    if (v <= 0.0) {
                        throw data_error("log domain violation at row " + std::to_string(i) +
                                         ", column '" + out.column_names[static_cast<std::size_t>(j)] + "'");
                    }
                    out.values(i, j) = std::log(v);
                    break;
                case ColumnTransform::Log1p:
                    if (v <= -1.0) {
                        throw data_error("log1p domain violation at row " + std::to_string(i) +
                                         ", column '" + out.column_names[static_cast<std::size_t>(j)] + "'");
                    }
                    out.values(i, j) = std::log1p(v);
                    break;
                case ColumnTransform::Sqrt:
                    if (v < 0.0) {
                        throw data_error("sqrt domain violation at row " + std::to_string(i) +
                                         ", column '" + out.column_names[static_cast<std::size_t>(j)] + "'");
                    }
                    out.values(i, j) = std::sqrt(v);
                    break;
                case ColumnTransform::None: break;
            }
        }
        out.column_names[static_cast<std::size_t>(j)] =
            transform_name(tag) + "(" + t.column_names[static_cast<std::size_t>(j)] + ")";
    }
    return out;
}

Index ExpansionSpec::expanded_count(Index p) const {
    Index count = 0;
    if (include_linear) count += p;
    if (include_quadratics) count += p;
    if (include_pairwise_interactions) count += p * (p - 1) / 2;
    return count;
}

Matrix expand_features(const Matrix& x_block, const ExpansionSpec& spec) {
    const Index n = x_block.rows();
    const Index p = x_block.cols();
    if (p < 1) throw data_error("expand_features: need at least one column");
    Matrix out(n, spec.expanded_count(p));
    Index at = 0;
    if (spec.include_linear) {
        out.middleCols(at, p) = x_block;
        at += p;
    }
    if (spec.include_quadratics) {
        out.middleCols(at, p) = x_block.array().square();
        at += p;
    }
    if (spec.include_pairwise_interactions) {
        for (Index i = 0; i < p; ++i) {
            for (Index j = i + 1; j < p; ++j) {
                out.col(at++) = x_block.col(i).cwiseProduct(x_block.col(j));
            }
        }
    }
    return out;
}

std::vector<std::string> expanded_names(const std::vector<std::string>& base,
                                        const ExpansionSpec& spec) {
    std::vector<std::string> out;
    if (spec.include_linear) out.insert(out.end(), base.begin(), base.end());
    if (spec.include_quadratics) {
        for (const auto& name : base) out.push_back(name + "^2");
    }
    if (spec.include_pairwise_interactions) {
        for (std::size_t i = 0; i < base.size(); ++i) {
            for (std::size_t j = i + 1; j < base.size(); ++j) {
                out.push_back(base[i] + "*" + base[j]);
            }
        }
    }
    return out;
}

StandardizedMatrix standardize(const Matrix& x_block) {
    const Index n = x_block.rows();
    const Index m = x_block.cols();
    StandardizedMatrix s;
    s.means = x_block.colwise().mean();
    s.scales = Vector::Ones(m);
    s.degenerate.assign(static_cast<std::size_t>(m), 0);

    Matrix centered = x_block.rowwise() - s.means.transpose();
    for (Index j = 0; j < m; ++j) {
        const double var = n >= 2 ? centered.col(j).squaredNorm() / static_cast<double>(n - 1) : 0.0;
        const double sd = std::sqrt(var);
        if (sd > 0.0) {
            s.scales(j) = sd;
        } else {
            s.degenerate[static_cast<std::size_t>(j)] = 1;  // scale stays 1
        }
    }
    s.values = centered.array().rowwise() / s.scales.transpose().array();
    return s;
}

Matrix destandardize(const StandardizedMatrix& s) { return s.invert(s.values); }

Matrix StandardizedMatrix::apply(const Matrix& x_new) const {
    if (x_new.cols() != means.size()) {
        throw data_error("standardization parameters cover " + std::to_string(means.size()) +
                         " columns, got " + std::to_string(x_new.cols()));
    }
    Matrix out = x_new.rowwise() - means.transpose();
    out = out.array().rowwise() / scales.transpose().array();
    return out;
}

Matrix StandardizedMatrix::invert(const Matrix& std_rows) const {
    if (std_rows.cols() != means.size()) {
        throw data_error("standardization parameters cover " + std::to_string(means.size()) +
                         " columns, got " + std::to_string(std_rows.cols()));
    }
    Matrix out = std_rows.array().rowwise() * scales.transpose().array();
    out = out.rowwise() + means.transpose();
    return out;
}

} // namespace dlpls
