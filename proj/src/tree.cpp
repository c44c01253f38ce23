#include "dlpls/tree.hpp"

#include "dlpls/errors.hpp"
#include "dlpls/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dlpls {

namespace {

double sample_variance(const Vector& v) {
    const Index n = v.size();
    if (n < 2) return 0.0;
    return (v.array() - v.mean()).square().sum() / static_cast<double>(n - 1);
}

double segment_variance(const Vector& v, Index begin, Index count) {
    return sample_variance(v.segment(begin, count));
}

} // namespace

double tree_split_criterion(const Vector& scores_desc, const Vector& y_desc, Index n1,
                            double a, double b) {
    const Index n = scores_desc.size();
    const Index n2 = n - n1;
    const double var_y = sample_variance(y_desc);
    const double var_t = sample_variance(scores_desc);
    const double y_term = (segment_variance(y_desc, 0, n1) + segment_variance(y_desc, n1, n2)) / var_y;
    const double t_term =
        (segment_variance(scores_desc, 0, n1) + segment_variance(scores_desc, n1, n2)) / var_t;
    const double balance = static_cast<double>(n1 - n2) / static_cast<double>(n1 + n2);
    return (1.0 - b) * (a * y_term + (1.0 - a) * t_term) + b * balance * balance;
}

PlsTree PlsTree::fit(const Matrix& x, const Vector& y, const TreeConfig& cfg) {
    if (x.rows() != y.size()) throw data_error("pls_tree: X/y row mismatch");
    if (cfg.min_leaf < 2) throw data_error("pls_tree: min_leaf must be >= 2");
    if (cfg.a < 0.0 || cfg.a > 1.0 || cfg.b < 0.0 || cfg.b > 1.0) {
        throw data_error("pls_tree: a and b must lie in [0, 1]");
    }
    if (x.rows() < 2 * cfg.min_leaf) throw data_error("pls_tree: too few rows to split");

    PlsTree tree;
    tree.cfg_ = cfg;
    std::vector<Index> rows(static_cast<std::size_t>(x.rows()));
    std::iota(rows.begin(), rows.end(), Index{0});
    tree.build(x, y, std::move(rows), 0);
    return tree;
}

PlsTree PlsTree::from_parts(std::vector<Node> nodes, const TreeConfig& cfg) {
    if (nodes.empty()) throw data_error("pls_tree: cannot assemble an empty tree");
    PlsTree tree;
    tree.cfg_ = cfg;
    tree.nodes_ = std::move(nodes);
    return tree;
}

int PlsTree::build(const Matrix& x, const Vector& y, std::vector<Index> rows, Index depth) {
    const auto id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    const Index n = static_cast<Index>(rows.size());

    Vector y_node(n);
    Matrix x_node(n, x.cols());
    for (Index i = 0; i < n; ++i) {
        y_node(i) = y(rows[static_cast<std::size_t>(i)]);
        x_node.row(i) = x.row(rows[static_cast<std::size_t>(i)]);
    }

    {
        Node& node = nodes_[static_cast<std::size_t>(id)];
        node.depth = depth;
        node.prediction = y_node.mean();
        node.y_center = y_node.mean();
        node.x_center = x_node.colwise().mean();
        node.rows = rows;
    }

    if (n < 2 * cfg_.min_leaf || depth >= cfg_.max_depth) return id;

    const Vector x_center = nodes_[static_cast<std::size_t>(id)].x_center;
    const Matrix xc = x_node.rowwise() - x_center.transpose();
    const Vector yc = y_node.array() - y_node.mean();
    const Vector xty = xc.transpose() * yc;
    const double xty_ss = xty.squaredNorm();
    if (xty_ss <= 0.0) return id;  // degenerate direction, stay a leaf

    const Vector w = xty / xty_ss;
    const Vector score = xc * w;
    if (sample_variance(score) <= 0.0 || sample_variance(yc) <= 0.0) return id;

    // order node rows by decreasing score; stable for reproducibility
    std::vector<Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), Index{0});
    std::stable_sort(perm.begin(), perm.end(),
                     [&](Index a, Index b) { return score(a) > score(b); });

    Vector score_sorted(n), y_sorted(n);
    std::vector<Index> rows_sorted(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        score_sorted(i) = score(perm[static_cast<std::size_t>(i)]);
        y_sorted(i) = yc(perm[static_cast<std::size_t>(i)]) + y_node.mean();
        rows_sorted[static_cast<std::size_t>(i)] = rows[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    }

    Index best_n1 = 0;
    double best = std::numeric_limits<double>::infinity();
    for (Index n1 = cfg_.min_leaf; n1 <= n - cfg_.min_leaf; ++n1) {
        const double crit = tree_split_criterion(score_sorted, y_sorted, n1, cfg_.a, cfg_.b);
        if (crit < best) {
            best = crit;
            best_n1 = n1;
        }
    }
    if (best_n1 == 0) return id;

    {
        Node& node = nodes_[static_cast<std::size_t>(id)];
        node.leaf = false;
        node.direction = w;
        node.rows = rows_sorted;
        node.split_pos = best_n1;
        node.split_value = 0.5 * (score_sorted(best_n1 - 1) + score_sorted(best_n1));
        node.criterion = best;
    }

    std::vector<Index> high(rows_sorted.begin(), rows_sorted.begin() + best_n1);
    std::vector<Index> low(rows_sorted.begin() + best_n1, rows_sorted.end());
    const int hc = build(x, y, std::move(high), depth + 1);
    const int lc = build(x, y, std::move(low), depth + 1);
    nodes_[static_cast<std::size_t>(id)].high_child = hc;
    nodes_[static_cast<std::size_t>(id)].low_child = lc;
    return id;
}

Vector PlsTree::predict(const Matrix& x) const {
    if (nodes_.empty()) throw numeric_error("pls_tree: empty tree");
    Vector out(x.rows());
    for (Index r = 0; r < x.rows(); ++r) {
        int at = 0;
        for (;;) {
            const Node& node = nodes_[static_cast<std::size_t>(at)];
            if (node.leaf) {
                out(r) = node.prediction;
                break;
            }
            const double score = (x.row(r).transpose() - node.x_center).dot(node.direction);
            at = score >= node.split_value ? node.high_child : node.low_child;
        }
    }
    return out;
}

TreeConfig select_tree_config_cv(const Matrix& x, const Vector& y,
                                 const std::vector<double>& a_grid,
                                 const std::vector<double>& b_grid, int folds,
                                 std::uint64_t seed, const TreeConfig& base) {
    if (folds < 2) throw data_error("select_tree_config_cv: need at least 2 folds");
    const Index n = x.rows();
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    Rng rng(seed);
    rng.shuffle(order);

    TreeConfig best = base;
    double best_sse = std::numeric_limits<double>::infinity();
    for (const double a : a_grid) {
        for (const double b : b_grid) {
            TreeConfig cfg = base;
            cfg.a = a;
            cfg.b = b;
            double sse = 0.0;
            for (int f = 0; f < folds; ++f) {
                std::vector<Index> train, test;
                for (std::size_t i = 0; i < order.size(); ++i) {
                    (static_cast<int>(i % static_cast<std::size_t>(folds)) == f ? test : train)
                        .push_back(order[i]);
                }
                const Matrix x_train = x(train, Eigen::all);
                const Vector y_train = y(train);
                const Matrix x_test = x(test, Eigen::all);
                const Vector y_test = y(test);
                const PlsTree tree = PlsTree::fit(x_train, y_train, cfg);
                sse += (tree.predict(x_test) - y_test).squaredNorm();
            }
            if (sse < best_sse) {
                best_sse = sse;
                best = cfg;
            }
        }
    }
    return best;
}

} // namespace dlpls
