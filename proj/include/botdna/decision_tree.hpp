#pragma once

#include <cstdint>
#include <vector>

#include "botdna/rng.hpp"

namespace botdna {

using Matrix = std::vector<std::vector<double>>;

// One CART node.  Leaves have feature == -1 and carry value; split nodes
// route row[feature] <= threshold to left, else to right.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    double value = 0.0;
};

struct TreeParams {
    int max_depth = -1;           // -1 grows until pure
    int max_features = 0;         // 0 considers every feature at each split
    std::size_t min_samples_split = 2;
    std::size_t min_samples_leaf = 1;
};

class DecisionTree {
public:
    // Weighted classification tree, Gini impurity.  Leaf value is the
    // weighted fraction of class 1.
    static DecisionTree fit_classifier(const Matrix& X,
                                       const std::vector<int>& y,
                                       const std::vector<double>& weights,
                                       const TreeParams& params, Rng& rng);

    // Regression tree on squared error.  Leaf value is the target mean.
    static DecisionTree fit_regressor(const Matrix& X,
                                      const std::vector<double>& targets,
                                      const TreeParams& params, Rng& rng);

    double predict(const std::vector<double>& row) const;
    std::size_t leaf_index(const std::vector<double>& row) const;

    std::vector<TreeNode>& nodes() { return nodes_; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }

private:
    std::vector<TreeNode> nodes_;
};

}  // namespace botdna
