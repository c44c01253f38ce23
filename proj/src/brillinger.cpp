#include "dlpls/brillinger.hpp"

#include "dlpls/errors.hpp"
#include "dlpls/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dlpls {

namespace {

constexpr Index kGridPoints = 201;

Vector make_grid(double lo, double hi, Index count) {
    Vector g(count);
    for (Index i = 0; i < count; ++i) {
        g(i) = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return g;
}

Vector local_linear_fit(const Vector& index, const Vector& y, const Vector& grid, double h) {
    const Index n = index.size();
    Vector out(grid.size());
    for (Index gi = 0; gi < grid.size(); ++gi) {
        const double u = grid(gi);
        double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
        for (Index i = 0; i < n; ++i) {
            const double d = index(i) - u;
            const double z = d / h;
            const double w = std::exp(-0.5 * z * z);
            s0 += w;
            s1 += w * d;
            s2 += w * d * d;
            t0 += w * y(i);
            t1 += w * d * y(i);
        }
        const double denom = s0 * s2 - s1 * s1;
        if (std::abs(denom) > 1e-12 * (s0 * s2 + 1e-300)) {
            out(gi) = (s2 * t0 - s1 * t1) / denom;
        } else {
            out(gi) = s0 > 0 ? t0 / s0 : 0.0;  // kernel-mean fallback
        }
    }
    return out;
}

// Cubic B-spline basis value, Cox-de Boor on a clamped uniform knot vector.
double bspline_basis(const std::vector<double>& knots, Index i, int degree, double u) {
    if (degree == 0) {
        const bool last = static_cast<std::size_t>(i + 2) == knots.size() &&
                          u == knots[static_cast<std::size_t>(i + 1)];
        return (u >= knots[static_cast<std::size_t>(i)] &&
                u < knots[static_cast<std::size_t>(i + 1)]) || last
                   ? 1.0
                   : 0.0;
    }
    const double k_i = knots[static_cast<std::size_t>(i)];
    const double k_id = knots[static_cast<std::size_t>(i + degree)];
    const double k_i1 = knots[static_cast<std::size_t>(i + 1)];
    const double k_id1 = knots[static_cast<std::size_t>(i + degree + 1)];
    double left = 0.0, right = 0.0;
    if (k_id > k_i) left = (u - k_i) / (k_id - k_i) * bspline_basis(knots, i, degree - 1, u);
    if (k_id1 > k_i1) {
        right = (k_id1 - u) / (k_id1 - k_i1) * bspline_basis(knots, i + 1, degree - 1, u);
    }
    return left + right;
}

Matrix bspline_design(const Vector& u, double lo, double hi, Index n_basis) {
    const int degree = 3;
    const Index n_interior = n_basis - degree - 1;
    std::vector<double> knots;
    for (int k = 0; k <= degree; ++k) knots.push_back(lo);
    for (Index k = 1; k <= n_interior; ++k) {
        knots.push_back(lo + (hi - lo) * static_cast<double>(k) /
                                 static_cast<double>(n_interior + 1));
    }
    for (int k = 0; k <= degree; ++k) knots.push_back(hi);

    Matrix b(u.size(), n_basis);
    for (Index r = 0; r < u.size(); ++r) {
        const double v = std::clamp(u(r), lo, hi);
        for (Index c = 0; c < n_basis; ++c) b(r, c) = bspline_basis(knots, c, degree, v);
    }
    return b;
}

Vector spline_fit(const Vector& index, const Vector& y, const Vector& grid, double penalty) {
    const double lo = index.minCoeff();
    const double hi = index.maxCoeff();
    const Index n_basis = std::min<Index>(23, std::max<Index>(6, index.size() / 2));
    const Matrix b = bspline_design(index, lo, hi, n_basis);

    Matrix diff2 = Matrix::Zero(n_basis - 2, n_basis);  // second differences
    for (Index i = 0; i < n_basis - 2; ++i) {
        diff2(i, i) = 1.0;
        diff2(i, i + 1) = -2.0;
        diff2(i, i + 2) = 1.0;
    }
    const Matrix btb = b.transpose() * b;
    const Matrix pen = diff2.transpose() * diff2;
    const Vector bty = b.transpose() * y;

    auto solve_for = [&](double lam) { return Matrix(btb + lam * pen).ldlt().solve(bty).eval(); };

    double lam = penalty;
    if (lam <= 0.0) {
        // GCV over a coarse log grid.
        double best = std::numeric_limits<double>::infinity();
        for (int e = -4; e <= 4; ++e) {
            const double cand = std::pow(10.0, e);
            const Eigen::LDLT<Matrix> fac(btb + cand * pen);
            const Vector coef = fac.solve(bty);
            const double rss = (y - b * coef).squaredNorm();
            const double trace_h = (fac.solve(btb)).trace();
            const double denom = static_cast<double>(index.size()) - trace_h;
            if (denom <= 0) continue;
            const double gcv = static_cast<double>(index.size()) * rss / (denom * denom);
            if (gcv < best) {
                best = gcv;
                lam = cand;
            }
        }
        if (lam <= 0.0) lam = 1.0;
    }
    const Vector coef = solve_for(lam);
    return bspline_design(grid, lo, hi, n_basis) * coef;
}

} // namespace

double LinkSmoother::evaluate(double u) const {
    const Index m = grid.size();
    if (m == 0) throw numeric_error("link smoother is empty");
    if (u <= grid(0)) return values(0);
    if (u >= grid(m - 1)) return values(m - 1);
    // grid is uniform; locate the cell directly
    const double step = (grid(m - 1) - grid(0)) / static_cast<double>(m - 1);
    auto cell = static_cast<Index>((u - grid(0)) / step);
    cell = std::clamp<Index>(cell, 0, m - 2);
    const double frac = (u - grid(cell)) / (grid(cell + 1) - grid(cell));
    return values(cell) + frac * (values(cell + 1) - values(cell));
}

Vector SingleIndexFit::predict(const Matrix& x) const {
    const Vector u = index(x);
    Vector out(u.size());
    for (Index i = 0; i < u.size(); ++i) out(i) = link.evaluate(u(i));
    return out;
}

SingleIndexFit fit_single_index(const Matrix& x, const Vector& y, const BandwidthPolicy& policy) {
    const Index n = x.rows();
    const Index p = x.cols();
    if (y.size() != n) throw data_error("fit_single_index: y length mismatch");
    if (n <= p) {
        throw data_error("fit_single_index: need n > p, got n=" + std::to_string(n) +
                         ", p=" + std::to_string(p));
    }

    Matrix design(n, p + 1);
    design.col(0).setOnes();
    design.rightCols(p) = x;
    const Vector coef = ols(design, Matrix(y)).col(0);

    SingleIndexFit fit;
    fit.intercept = coef(0);
    fit.beta_hat = coef.tail(p);
    fit.n_used = n;

    const Vector index = x * fit.beta_hat;
    const double sd = std::sqrt((index.array() - index.mean()).square().sum() /
                                static_cast<double>(n - 1));
    if (sd <= 0.0) throw numeric_error("fit_single_index: degenerate (constant) index");

    const Vector grid = make_grid(index.minCoeff(), index.maxCoeff(), kGridPoints);
    fit.link.grid = grid;
    if (policy.kind == SmootherKind::LocalLinear) {
        const double h = policy.bandwidth > 0.0
                             ? policy.bandwidth
                             : 1.06 * sd * std::pow(static_cast<double>(n), -0.2);
        fit.smoother_bandwidth = h;
        fit.link.bandwidth = h;
        fit.link.values = local_linear_fit(index, y, grid, h);
    } else {
        fit.smoother_bandwidth = policy.spline_penalty;
        fit.link.bandwidth = policy.spline_penalty;
        fit.link.values = spline_fit(index, y, grid, policy.spline_penalty);
    }
    if (!fit.link.values.allFinite()) {
        throw numeric_error("fit_single_index: smoother produced non-finite values");
    }
    return fit;
}

SteinK stein_k(const Vector& beta, const std::function<double(double)>& g, double alpha,
               const GaussianDesign& xdist, std::size_t draws, std::uint64_t seed) {
    const double mu = alpha + xdist.mean * beta.sum();
    const double sigma = xdist.sd * beta.norm();
    if (sigma <= 0.0) throw data_error("stein_k: index has zero variance");

    constexpr std::size_t kBatches = 100;
    const std::size_t per_batch = std::max<std::size_t>(draws / kBatches, 2);
    Rng rng(seed);

    std::vector<double> batch_k(kBatches);
    for (std::size_t b = 0; b < kBatches; ++b) {
        double su = 0, sg = 0, sug = 0, suu = 0;
        for (std::size_t i = 0; i < per_batch; ++i) {
            const double u = mu + sigma * rng.normal();
            const double gu = g(u);
            su += u;
            sg += gu;
            sug += u * gu;
            suu += u * u;
        }
        const auto m = static_cast<double>(per_batch);
        const double cov = sug / m - (su / m) * (sg / m);
        const double var_u = suu / m - (su / m) * (su / m);
        batch_k[b] = cov * (xdist.sd * xdist.sd) / var_u;
    }

    SteinK out;
    out.draws = per_batch * kBatches;
    out.k = std::accumulate(batch_k.begin(), batch_k.end(), 0.0) / static_cast<double>(kBatches);
    double ss = 0;
    for (double kb : batch_k) ss += (kb - out.k) * (kb - out.k);
    out.standard_error =
        std::sqrt(ss / static_cast<double>(kBatches - 1) / static_cast<double>(kBatches));
    return out;
}

namespace {

Matrix apply_activation(const Matrix& z, RecursiveActivation act) {
    if (act == RecursiveActivation::Identity) return z;
    return z.cwiseMax(0.0);
}

} // namespace

Matrix DeepRecursiveFit::predict(const Matrix& x) const {
    Matrix z = x;
    for (std::size_t s = 0; s + 1 < layers.size(); ++s) {
        z = apply_activation(z * layers[s], activation);
    }
    return z * layers.back();
}

DeepRecursiveFit fit_deep_relu_recursive(const Matrix& x, const Matrix& y,
                                         const std::vector<Index>& hidden_dims,
                                         RecursiveActivation act) {
    const Index n = x.rows();
    const Index q = y.cols();
    if (y.rows() != n) throw data_error("fit_deep_relu_recursive: row mismatch");
    for (const Index d : hidden_dims) {
        if (d != q) {
            throw data_error(
                "fit_deep_relu_recursive: the recursion regresses Y at every stage, so each "
                "hidden width must equal the output width " +
                std::to_string(q) + " (got " + std::to_string(d) + ")");
        }
        if (d >= n) throw data_error("fit_deep_relu_recursive: width exceeds sample size");
    }

    DeepRecursiveFit fit;
    fit.activation = act;
    Matrix z = x;
    for (std::size_t stage = 0; stage < hidden_dims.size(); ++stage) {
        const Matrix b = ols(z, y);
        fit.layers.push_back(b);
        fit.residual_mse.push_back((y - z * b).squaredNorm() /
                                   static_cast<double>(y.size()));
        z = apply_activation(z * b, act);
        std::vector<Index> dead;
        for (Index c = 0; c < z.cols(); ++c) {
            if (z.col(c).cwiseAbs().maxCoeff() == 0.0) dead.push_back(c);
        }
        fit.dead_units.push_back(std::move(dead));  // pseudo-inverse zeroes their weight
    }
    const Matrix top = ols(z, y);
    fit.layers.push_back(top);
    fit.residual_mse.push_back((y - z * top).squaredNorm() / static_cast<double>(y.size()));
    if (!fit.predict(x).allFinite()) {
        throw numeric_error("fit_deep_relu_recursive: non-finite composition");
    }
    return fit;
}

ProportionalityReport proportionality_report(const Matrix& b_hat, const Matrix& b_true) {
    if (b_hat.rows() != b_true.rows() || b_hat.cols() != b_true.cols()) {
        throw data_error("proportionality_report: shape mismatch");
    }
    const Index d = b_hat.rows();
    ProportionalityReport rep;
    rep.slopes.resize(d);
    rep.r_squared.resize(d);
    for (Index i = 0; i < d; ++i) {
        const double denom = b_true.row(i).squaredNorm();
        if (denom == 0.0) throw data_error("proportionality_report: zero row in reference");
        const double slope = b_hat.row(i).dot(b_true.row(i)) / denom;
        rep.slopes(i) = slope;
        const double ss = b_hat.row(i).squaredNorm();
        rep.r_squared(i) =
            ss > 0.0 ? 1.0 - (b_hat.row(i) - slope * b_true.row(i)).squaredNorm() / ss : 0.0;
    }

    // Principal angles between row spaces via orthonormal bases.
    const SvdResult s1 = svd(b_hat.transpose());
    const SvdResult s2 = svd(b_true.transpose());
    const Index r1 = numerical_rank(s1, b_hat.cols(), b_hat.rows());
    const Index r2 = numerical_rank(s2, b_true.cols(), b_true.rows());
    const Matrix cross = s1.left.leftCols(r1).transpose() * s2.left.leftCols(r2);
    const Vector cosines = svd(cross).singular_values;
    rep.principal_angles_deg.resize(cosines.size());
    for (Index i = 0; i < cosines.size(); ++i) {
        rep.principal_angles_deg(i) =
            std::acos(std::clamp(cosines(i), -1.0, 1.0)) * 180.0 / M_PI;
    }
    std::sort(rep.principal_angles_deg.begin(), rep.principal_angles_deg.end());
    return rep;
}

double pearson(const Vector& a, const Vector& b) {
    if (a.size() != b.size() || a.size() < 2) throw data_error("pearson: size mismatch");
    const Vector ac = a.array() - a.mean();
    const Vector bc = b.array() - b.mean();
    const double denom = ac.norm() * bc.norm();
    if (denom == 0.0) return 0.0;
    return ac.dot(bc) / denom;
}

} // namespace dlpls
