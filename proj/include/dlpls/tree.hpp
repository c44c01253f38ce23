#pragma once

#include "dlpls/linalg.hpp"

#include <cstdint>
#include <vector>

namespace dlpls {

struct TreeConfig {
    double a = 0.5;        // weight between response and score variance terms
    double b = 0.1;        // weight of the balance penalty
    Index min_leaf = 2;
    Index max_depth = 8;
};

/// Binary tree splitting on the first PLS score of the node data.
///
/// At each node (node-centered X, y) the direction is w = X^T y / |X^T y|^2,
/// observations are ordered by decreasing score t = Xw, and the split index
/// minimizes
///   (1-b) (a (Var y1 + Var y2)/Var y + (1-a) (Var t1 + Var t2)/Var t)
///     + b ((N1-N2)/(N1+N2))^2
/// over all positions leaving both children at least min_leaf rows.
/// Variances use the n-1 denominator; ties resolve to the smallest N1.
/// Leaves predict the node mean of y.
class PlsTree {
public:
    struct Node {
        std::vector<Index> rows;   // training rows, sorted by decreasing score
        Vector direction;          // w (empty on leaves without a direction)
        Vector x_center;           // node means used for centering
        double y_center = 0.0;
        bool leaf = true;
        double prediction = 0.0;   // node mean of y
        Index split_pos = 0;       // N1; rows[0..N1) go to the high-score child
        double split_value = 0.0;  // centered-score threshold (midpoint)
        double criterion = 0.0;    // value attained at the chosen split
        int high_child = -1;       // child with scores >= split_value
        int low_child = -1;
        Index depth = 0;
    };

    static PlsTree fit(const Matrix& x, const Vector& y, const TreeConfig& cfg);

    /// Reassembles a tree from serialized nodes (prediction structure only).
    static PlsTree from_parts(std::vector<Node> nodes, const TreeConfig& cfg);

    Vector predict(const Matrix& x) const;
    const std::vector<Node>& nodes() const { return nodes_; }
    const TreeConfig& config() const { return cfg_; }

private:
    std::vector<Node> nodes_;
    TreeConfig cfg_;

    int build(const Matrix& x, const Vector& y, std::vector<Index> rows, Index depth);
};

/// Split criterion on score/response vectors already ordered by decreasing
/// score; n1 is the size of the first part.
double tree_split_criterion(const Vector& scores_desc, const Vector& y_desc, Index n1,
                            double a, double b);

/// Small grid search for (a, b) by K-fold prediction error.
TreeConfig select_tree_config_cv(const Matrix& x, const Vector& y,
                                 const std::vector<double>& a_grid,
                                 const std::vector<double>& b_grid, int folds,
                                 std::uint64_t seed, const TreeConfig& base = {});

} // namespace dlpls
