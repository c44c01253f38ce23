#include "dlpls/dataset.hpp"

#include "dlpls/errors.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

using namespace dlpls;

namespace {

struct TempCsv {
    std::string path;
    explicit TempCsv(const std::string& content) {
        static int counter = 0;
        path = "dlpls_test_" + std::to_string(counter++) + ".csv";
        std::ofstream out(path);
        out << content;
    }
    ~TempCsv() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("load_csv parses a minimal semicolon table") {
    TempCsv file("a;b\n1;2\n");
    CsvOptions opts;
    opts.delimiter = ';';
    const RawTable t = load_csv(file.path, std::vector<std::string>{"b"}, opts);
    CHECK(t.n() == 1);
    CHECK(t.n_inputs() == 1);
    CHECK(t.n_outputs() == 1);
    CHECK(t.values(0, 0) == 1.0);
    CHECK(t.y_block()(0, 0) == 2.0);
    CHECK(t.rejected_rows == 0);
}

TEST_CASE("load_csv drop policy removes non-finite rows and counts them") {
    TempCsv file("a,b\n1,2\nNaN,3\n4,5\n");
    CsvOptions opts;
    opts.non_finite = NonFiniteRule::DropRow;
    const RawTable t = load_csv(file.path, std::vector<std::string>{"b"}, opts);
    CHECK(t.n() == 2);
    CHECK(t.rejected_rows == 1);
}

TEST_CASE("load_csv reject policy fails on non-finite rows") {
    TempCsv file("a,b\n1,2\nNaN,3\n");
    CHECK_THROWS_AS(load_csv(file.path, std::vector<std::string>{"b"}, {}), data_error);
}

TEST_CASE("load_csv accepts scientific notation and quoted headers") {
    TempCsv file("\"x\";\"y\"\n1.5e-3;2E2\n");
    CsvOptions opts;
    opts.delimiter = ';';
    const RawTable t = load_csv(file.path, std::vector<std::string>{"y"}, opts);
    CHECK(t.values(0, 0) == doctest::Approx(0.0015));
    CHECK(t.values(0, 1) == doctest::Approx(200.0));
}

TEST_CASE("load_csv error paths") {
    CHECK_THROWS_AS(load_csv("no_such_file.csv", std::vector<std::string>{"y"}, {}), data_error);
    TempCsv bad_cell("a,b\n1,zzz\n");
    CHECK_THROWS_AS(load_csv(bad_cell.path, std::vector<std::string>{"b"}, {}), data_error);
    TempCsv ok("a,b\n1,2\n");
    CHECK_THROWS_AS(load_csv(ok.path, std::vector<std::string>{"nope"}, {}), data_error);
    TempCsv dup("a,a\n1,2\n");
    CHECK_THROWS_AS(load_csv(dup.path, std::vector<std::string>{"a"}, {}), data_error);
    TempCsv empty("a,b\n");
    CHECK_THROWS_AS(load_csv(empty.path, std::vector<std::string>{"b"}, {}), data_error);
}

TEST_CASE("apply_transforms computes exact logs and roots") {
    RawTable t;
    t.column_names = {"u", "v"};
    t.values.resize(3, 2);
    t.values.col(0) << 1.0, std::exp(1.0), std::exp(2.0);
    t.values.col(1) << 0.0, 1.0, 4.0;
    t.output_columns = {};

    TransformSpec spec;
    spec.tags = {ColumnTransform::Log, ColumnTransform::Sqrt};
    const RawTable out = apply_transforms(t, spec);
    CHECK(out.values(0, 0) == doctest::Approx(0.0));
    CHECK(out.values(1, 0) == doctest::Approx(1.0));
    CHECK(out.values(2, 0) == doctest::Approx(2.0));
    CHECK(out.values(2, 1) == doctest::Approx(2.0));
    CHECK(out.column_names[0] == "log(u)");
    CHECK(out.column_names[1] == "sqrt(v)");
}

TEST_CASE("apply_transforms rejects domain violations instead of clamping") {
    RawTable t;
    t.column_names = {"u"};
    t.values.resize(2, 1);
    t.values << -1.0, 2.0;
    TransformSpec spec;
    spec.tags = {ColumnTransform::Log};
    CHECK_THROWS_WITH_AS(apply_transforms(t, spec),
                         doctest::Contains("log domain violation at row 0"), data_error);
    spec.tags = {ColumnTransform::Sqrt};
    CHECK_THROWS_AS(apply_transforms(t, spec), data_error);
}

TEST_CASE("expand_features hits the published counts") {
    Rng rng(31);
    CHECK(expand_features(testing::random_matrix(rng, 3, 11), ExpansionSpec::all()).cols() == 77);
    CHECK(expand_features(testing::random_matrix(rng, 3, 1), ExpansionSpec::all()).cols() == 2);
    CHECK(expand_features(testing::random_matrix(rng, 3, 3), ExpansionSpec::all()).cols() == 9);
}

TEST_CASE("expand_features count formula holds for p up to 20") {
    Rng rng(32);
    for (Index p = 1; p <= 20; ++p) {
        const Matrix x = testing::random_matrix(rng, 2, p);
        const Matrix e = expand_features(x, ExpansionSpec::all());
        CHECK(e.cols() == p + p + p * (p - 1) / 2);
    }
}

TEST_CASE("expand_features ordering and names") {
    Matrix x(1, 3);
    x << 2.0, 3.0, 5.0;
    const Matrix e = expand_features(x, ExpansionSpec::all());
    // linear, squares, then (1,2), (1,3), (2,3)
    CHECK(e(0, 0) == 2.0);
    CHECK(e(0, 3) == 4.0);
    CHECK(e(0, 6) == 6.0);
    CHECK(e(0, 7) == 10.0);
    CHECK(e(0, 8) == 15.0);

    const auto names = expanded_names({"a", "b", "c"}, ExpansionSpec::all());
    CHECK(names[3] == "a^2");
    CHECK(names[6] == "a*b");
    CHECK(names[8] == "b*c");
}

TEST_CASE("standardize on a two-point column") {
    Matrix x(2, 1);
    x << 1.0, 3.0;
    const StandardizedMatrix s = standardize(x);
    CHECK(s.means(0) == doctest::Approx(2.0));
    CHECK(s.scales(0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(s.values(0, 0) == doctest::Approx(-1.0 / std::sqrt(2.0)));
    CHECK(s.values(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("standardizing an already standardized column is near identity") {
    Rng rng(33);
    const StandardizedMatrix once = standardize(testing::random_matrix(rng, 50, 3));
    const StandardizedMatrix twice = standardize(once.values);
    CHECK((twice.values - once.values).norm() < 1e-10);
    CHECK(twice.means.norm() < 1e-10);
    CHECK((twice.scales - Vector::Ones(3)).norm() < 1e-10);
}

TEST_CASE("constant columns are flagged degenerate, not errors") {
    Matrix x(3, 1);
    x << 5.0, 5.0, 5.0;
    const StandardizedMatrix s = standardize(x);
    CHECK(s.values.col(0).norm() == 0.0);
    CHECK(s.degenerate[0] == 1);
    CHECK(s.scales(0) == 1.0);
}

TEST_CASE("standardize round trips to 1e-12 relative") {
    Rng rng(34);
    const Matrix x = testing::random_matrix(rng, 40, 6, 10.0);
    const StandardizedMatrix s = standardize(x);
    CHECK((destandardize(s) - x).norm() <= 1e-12 * x.norm());
    // and the reverse composition on the standardized block
    StandardizedMatrix t = s;
    t.values = s.apply(destandardize(s));
    CHECK((t.values - s.values).norm() <= 1e-12 * s.values.norm());
}

TEST_CASE("stored parameters reproduce the training block") {
    Rng rng(35);
    const Matrix x = testing::random_matrix(rng, 25, 4, 3.0);
    const StandardizedMatrix s = standardize(x);
    CHECK((s.apply(x) - s.values).norm() < 1e-12);
}

TEST_CASE("means and scales satisfy the stated tolerances") {
    Rng rng(36);
    const StandardizedMatrix s = standardize(testing::random_matrix(rng, 100, 5, 7.0));
    for (Index j = 0; j < 5; ++j) {
        CHECK(std::abs(s.values.col(j).mean()) < 1e-10);
        const double sd = std::sqrt(s.values.col(j).squaredNorm() / 99.0);
        CHECK(std::abs(sd - 1.0) < 1e-10);
    }
}

TEST_CASE("wine transform defaults target the skewed columns") {
    const std::vector<std::string> names = {"fixed acidity", "volatile acidity", "residual sugar",
                                            "quality"};
    const TransformSpec spec = TransformSpec::wine_default(names);
    CHECK(spec.tags[0] == ColumnTransform::None);
    CHECK(spec.tags[1] == ColumnTransform::Log1p);
    CHECK(spec.tags[2] == ColumnTransform::Log1p);
    CHECK(spec.tags[3] == ColumnTransform::None);
}
