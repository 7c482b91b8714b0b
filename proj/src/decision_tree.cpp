#include "botdna/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "botdna/errors.hpp"

namespace botdna {

namespace {

struct NodeStats {
    double weight = 0.0;    // sum of sample weights
    double sum = 0.0;       // class-1 weight, or target weighted sum
    double sum_sq = 0.0;    // weighted squared targets (regression only)
};

// Within-node cost whose sum over children the splitter minimizes:
// weight * gini for classification, squared error for regression.
double node_cost(const NodeStats& s, bool classification) {
    if (s.weight <= 0.0) return 0.0;
    if (classification) {
        double s0 = s.weight - s.sum;
        return s.weight - (s0 * s0 + s.sum * s.sum) / s.weight;
    }
    return s.sum_sq - s.sum * s.sum / s.weight;
}

class Builder {
public:
    Builder(const Matrix& X, const std::vector<double>& targets,
            const std::vector<double>& weights, bool classification,
            const TreeParams& params, Rng& rng)
        : X_(X),
          targets_(targets),
          weights_(weights),
          classification_(classification),
          params_(params),
          rng_(rng) {}

    std::vector<TreeNode> build() {
        std::vector<std::size_t> idx(X_.size());
        std::iota(idx.begin(), idx.end(), 0);
        build_node(idx, 0);
        return std::move(nodes_);
    }

private:
    struct Split {
        int feature = -1;
        double threshold = 0.0;
        double cost = std::numeric_limits<double>::infinity();
    };

    NodeStats stats_of(const std::vector<std::size_t>& idx) const {
        NodeStats s;
        for (std::size_t i : idx) {
            double w = weights_[i];
            double t = targets_[i];
            s.weight += w;
            s.sum += w * t;
            s.sum_sq += w * t * t;
        }
        return s;
    }

    bool is_pure(const NodeStats& s) const {
        if (classification_) return s.sum <= 0.0 || s.sum >= s.weight;
        return node_cost(s, false) <= 1e-12;
    }

    Split best_split(const std::vector<std::size_t>& idx) {
        std::size_t d = X_.front().size();
        std::vector<std::size_t> order(d);
        std::iota(order.begin(), order.end(), 0);
        std::size_t budget = d;
        if (params_.max_features > 0 &&
            static_cast<std::size_t>(params_.max_features) < d) {
            rng_.shuffle(order);
            budget = static_cast<std::size_t>(params_.max_features);
        }

        Split best;
        std::size_t tried = 0;
        std::vector<std::pair<double, std::size_t>> column(idx.size());
        for (std::size_t f : order) {
            if (tried >= budget) break;
            for (std::size_t i = 0; i < idx.size(); ++i)
                column[i] = {X_[idx[i]][f], idx[i]};
            std::sort(column.begin(), column.end());
            if (column.front().first == column.back().first) continue;
            ++tried;

            NodeStats left;
            NodeStats right = stats_of(idx);
            for (std::size_t i = 0; i + 1 < column.size(); ++i) {
                std::size_t row = column[i].second;
                double w = weights_[row];
                double t = targets_[row];
                left.weight += w;
                left.sum += w * t;
                left.sum_sq += w * t * t;
                right.weight -= w;
                right.sum -= w * t;
                right.sum_sq -= w * t * t;
                if (column[i].first == column[i + 1].first) continue;
                std::size_t n_left = i + 1;
                std::size_t n_right = column.size() - n_left;
                if (n_left < params_.min_samples_leaf ||
                    n_right < params_.min_samples_leaf)
                    continue;
                double cost = node_cost(left, classification_) +
                              node_cost(right, classification_);
                if (cost < best.cost) {
                    best.cost = cost;
                    best.feature = static_cast<int>(f);
                    best.threshold =
                        (column[i].first + column[i + 1].first) / 2.0;
                }
            }
        }
        return best;
    }

    std::int32_t build_node(std::vector<std::size_t>& idx, int depth) {
        NodeStats s = stats_of(idx);
        auto node_id = static_cast<std::int32_t>(nodes_.size());
        nodes_.emplace_back();
        nodes_[static_cast<std::size_t>(node_id)].value =
            s.weight > 0.0 ? s.sum / s.weight : 0.0;

        bool stop = idx.size() < params_.min_samples_split || is_pure(s) ||
                    (params_.max_depth >= 0 && depth >= params_.max_depth);
        if (!stop) {
            Split split = best_split(idx);
            if (split.feature >= 0) {
                std::vector<std::size_t> left_idx, right_idx;
                for (std::size_t i : idx) {
                    if (X_[i][static_cast<std::size_t>(split.feature)] <=
                        split.threshold)
                        left_idx.push_back(i);
                    else
                        right_idx.push_back(i);
                }
                idx.clear();
                idx.shrink_to_fit();
                std::int32_t left = build_node(left_idx, depth + 1);
                std::int32_t right = build_node(right_idx, depth + 1);
                auto& node = nodes_[static_cast<std::size_t>(node_id)];
                node.feature = split.feature;
                node.threshold = split.threshold;
                node.left = left;
                node.right = right;
            }
        }
        return node_id;
    }

    const Matrix& X_;
    const std::vector<double>& targets_;
    const std::vector<double>& weights_;
    bool classification_;
    const TreeParams& params_;
    Rng& rng_;
    std::vector<TreeNode> nodes_;
};

}  // namespace

DecisionTree DecisionTree::fit_classifier(const Matrix& X,
                                          const std::vector<int>& y,
                                          const std::vector<double>& weights,
                                          const TreeParams& params, Rng& rng) {
    if (X.empty()) throw Error("cannot fit a tree on no rows");
    std::vector<double> targets(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        targets[i] = static_cast<double>(y[i]);
    DecisionTree tree;
    tree.nodes_ = Builder(X, targets, weights, true, params, rng).build();
    return tree;
}

DecisionTree DecisionTree::fit_regressor(const Matrix& X,
                                         const std::vector<double>& targets,
                                         const TreeParams& params, Rng& rng) {
    if (X.empty()) throw Error("cannot fit a tree on no rows");
    std::vector<double> weights(X.size(), 1.0);
    DecisionTree tree;
    tree.nodes_ = Builder(X, targets, weights, false, params, rng).build();
    return tree;
}

double DecisionTree::predict(const std::vector<double>& row) const {
    return nodes_[leaf_index(row)].value;
}

std::size_t DecisionTree::leaf_index(const std::vector<double>& row) const {
    std::size_t node = 0;
    while (nodes_[node].feature >= 0) {
        const TreeNode& n = nodes_[node];
        node = static_cast<std::size_t>(
            row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                    : n.right);
    }
    return node;
}

}  // namespace botdna
