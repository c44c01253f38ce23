#include "dlpls/linalg.hpp"

#include "dlpls/errors.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace dlpls;
using dlpls::testing::random_matrix;

TEST_CASE("svd of identity has unit singular values") {
    const SvdResult s = svd(Matrix::Identity(3, 3));
    for (Index i = 0; i < 3; ++i) CHECK(s.singular_values(i) == doctest::Approx(1.0));
}

TEST_CASE("svd of diag(3,1) recovers axis vectors with positive signs") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 3.0;
    a(1, 1) = 1.0;
    const SvdResult s = svd(a);
    CHECK(s.singular_values(0) == doctest::Approx(3.0));
    CHECK(s.singular_values(1) == doctest::Approx(1.0));
    CHECK(s.right(0, 0) == doctest::Approx(1.0));
    CHECK(s.right(1, 1) == doctest::Approx(1.0));
    CHECK(std::abs(s.right(1, 0)) < 1e-12);
}

TEST_CASE("svd reconstruction and orthonormality on random input") {
    Rng rng(11);
    const Matrix a = random_matrix(rng, 5, 3);
    const SvdResult s = svd(a);
    const Matrix rebuilt = s.left * s.singular_values.asDiagonal() * s.right.transpose();
    CHECK((a - rebuilt).norm() <= 1e-8 * a.norm());
    CHECK((s.left.transpose() * s.left - Matrix::Identity(3, 3)).norm() < 1e-10);
    CHECK((s.right.transpose() * s.right - Matrix::Identity(3, 3)).norm() < 1e-10);
    for (Index i = 1; i < s.singular_values.size(); ++i) {
        CHECK(s.singular_values(i) <= s.singular_values(i - 1));
    }
}

TEST_CASE("svd rejects non-finite input") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = std::nan("");
    CHECK_THROWS_AS(svd(a), data_error);
}

TEST_CASE("truncated_approx at full rank reproduces the input") {
    Rng rng(12);
    const Matrix a = random_matrix(rng, 4, 3);
    const SvdResult s = svd(a);
    CHECK((truncated_approx(s, 3) - a).norm() < 1e-10 * a.norm());
}

TEST_CASE("truncated_approx of diag(3,1) at L=1 zeroes the small direction") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 3.0;
    a(1, 1) = 1.0;
    const Matrix one = truncated_approx(svd(a), 1);
    CHECK(one(0, 0) == doctest::Approx(3.0));
    CHECK(std::abs(one(1, 1)) < 1e-12);
}

TEST_CASE("truncated_approx error equals the tail singular energy") {
    Rng rng(13);
    const Matrix a = random_matrix(rng, 6, 4);
    const SvdResult s = svd(a);
    const double gap = (a - truncated_approx(s, 2)).squaredNorm();
    const double tail = s.singular_values.tail(2).squaredNorm();
    CHECK(gap == doctest::Approx(tail).epsilon(1e-8));
}

TEST_CASE("truncated_approx rejects out-of-range L") {
    const SvdResult s = svd(Matrix::Identity(2, 2));
    CHECK_THROWS_AS(truncated_approx(s, 0), data_error);
    CHECK_THROWS_AS(truncated_approx(s, 3), data_error);
}

TEST_CASE("ols with identity design returns the targets") {
    Rng rng(14);
    const Matrix y = random_matrix(rng, 4, 2);
    CHECK((ols(Matrix::Identity(4, 4), y) - y).norm() < 1e-12);
}

TEST_CASE("ols on exact linear data recovers the slope") {
    Rng rng(15);
    const Matrix x = random_matrix(rng, 20, 1);
    const Matrix beta = ols(x, Matrix(2.0 * x));
    CHECK(beta(0, 0) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("ols satisfies the normal equations on an overdetermined system") {
    Rng rng(16);
    const Matrix x = random_matrix(rng, 30, 5);
    const Matrix y = random_matrix(rng, 30, 2);
    const Matrix beta = ols(x, y);
    const Matrix residual = x.transpose() * x * beta - x.transpose() * y;
    CHECK(residual.norm() < 1e-8);
}

TEST_CASE("ols reports the numerical rank of a deficient design") {
    Rng rng(17);
    Matrix x = random_matrix(rng, 10, 3);
    x.col(2) = x.col(0) + x.col(1);
    const LeastSquares sol = ols_full(x, Matrix(random_matrix(rng, 10, 1)));
    CHECK(sol.rank == 2);
}

TEST_CASE("ridge with lambda zero equals ols at full rank") {
    Rng rng(18);
    const Matrix x = random_matrix(rng, 25, 4);
    const Matrix y = random_matrix(rng, 25, 1);
    CHECK((ridge(x, y, 0.0) - ols(x, y)).norm() < 1e-10);
}

TEST_CASE("ridge shrinks monotonically with lambda") {
    Rng rng(19);
    const Matrix x = random_matrix(rng, 40, 5);
    const Matrix y = random_matrix(rng, 40, 1);
    const double n1 = ridge(x, y, 1.0).norm();
    const double n10 = ridge(x, y, 10.0).norm();
    const double n100 = ridge(x, y, 100.0).norm();
    CHECK(n1 > n10);
    CHECK(n10 > n100);
}

TEST_CASE("ridge closed form on an orthonormal design") {
    Rng rng(20);
    const Matrix q = testing::centered_orthonormal(rng, 30, 4);
    const Matrix y = random_matrix(rng, 30, 1);
    const double lambda = 2.5;
    const Matrix shrunk = ridge(q, y, lambda);
    const Matrix expected = ols(q, y) / (1.0 + lambda);
    CHECK((shrunk - expected).norm() < 1e-10);
}

TEST_CASE("ridge is continuous in lambda") {
    Rng rng(21);
    const Matrix x = random_matrix(rng, 30, 4);
    const Matrix y = random_matrix(rng, 30, 1);
    const double lambda = 0.7;
    CHECK((ridge(x, y, lambda) - ridge(x, y, lambda + 1e-6)).norm() < 1e-4);
}

TEST_CASE("sym_eigen of the identity") {
    const EigenSpectrum e = sym_eigen(Matrix::Identity(3, 3));
    for (Index i = 0; i < 3; ++i) CHECK(e.eigenvalues(i) == doctest::Approx(1.0));
}

TEST_CASE("sym_eigen of diag(4,1) sorts descending with axis vectors") {
    Matrix v = Matrix::Zero(2, 2);
    v(0, 0) = 4.0;
    v(1, 1) = 1.0;
    const EigenSpectrum e = sym_eigen(v);
    CHECK(e.eigenvalues(0) == doctest::Approx(4.0));
    CHECK(e.eigenvalues(1) == doctest::Approx(1.0));
    CHECK(e.eigenvectors(0, 0) == doctest::Approx(1.0));
    CHECK(e.eigenvectors(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("sym_eigen satisfies the eigen equations and orthonormality") {
    Rng rng(22);
    const Matrix x = random_matrix(rng, 12, 5);
    const Matrix gram = x.transpose() * x / 11.0;
    const EigenSpectrum e = sym_eigen(gram);
    for (Index j = 0; j < 5; ++j) {
        CHECK((gram * e.eigenvectors.col(j) - e.eigenvalues(j) * e.eigenvectors.col(j)).norm() <
              1e-8);
    }
    CHECK((e.eigenvectors.transpose() * e.eigenvectors - Matrix::Identity(5, 5)).norm() < 1e-10);
}

TEST_CASE("gram eigenvalues equal squared singular values") {
    Rng rng(23);
    Matrix x = random_matrix(rng, 10, 6);
    x.rowwise() -= x.colwise().mean().eval();
    const Matrix scaled = x / 3.0;  // sqrt(n-1)
    const EigenSpectrum e = sym_eigen(scaled.transpose() * scaled);
    const SvdResult s = svd(scaled);
    for (Index j = 0; j < 6; ++j) {
        CHECK(e.eigenvalues(j) ==
              doctest::Approx(s.singular_values(j) * s.singular_values(j)).epsilon(1e-8));
    }
}

TEST_CASE("ols is equivariant to column permutation") {
    Rng rng(24);
    const Matrix x = random_matrix(rng, 20, 4);
    const Matrix y = random_matrix(rng, 20, 1);
    const Matrix beta = ols(x, y);

    Matrix perm = Matrix::Zero(4, 4);
    perm(0, 2) = perm(1, 0) = perm(2, 3) = perm(3, 1) = 1.0;
    const Matrix beta_p = ols(x * perm, y);
    CHECK((perm * beta_p - beta).norm() < 1e-10);
}
