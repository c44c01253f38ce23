#pragma once

#include "dlpls/dataset.hpp"
#include "dlpls/linalg.hpp"
#include "dlpls/rng.hpp"

namespace dlpls::testing {

inline Matrix random_matrix(Rng& rng, Index n, Index m, double sd = 1.0) {
    Matrix x(n, m);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < m; ++j) x(i, j) = sd * rng.normal();
    }
    return x;
}

inline Vector random_vector(Rng& rng, Index n, double sd = 1.0) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = sd * rng.normal();
    return v;
}

/// Orthonormal columns spanning the column space of a centered random
/// matrix; the columns stay centered, so standardization keeps them
/// orthogonal.
inline Matrix centered_orthonormal(Rng& rng, Index n, Index p) {
    Matrix a = random_matrix(rng, n, p);
    a.rowwise() -= a.colwise().mean().eval();
    return Eigen::HouseholderQR<Matrix>(a).householderQ() * Matrix::Identity(n, p);
}

/// Wraps pre-centered columns as a StandardizedMatrix without rescaling,
/// for tests that must control the fitted block exactly.
inline StandardizedMatrix as_standardized(const Matrix& values) {
    StandardizedMatrix s;
    s.values = values;
    s.means = Vector::Zero(values.cols());
    s.scales = Vector::Ones(values.cols());
    s.degenerate.assign(static_cast<std::size_t>(values.cols()), 0);
    return s;
}

} // namespace dlpls::testing
