#pragma once

#include <vector>

#include "botdna/decision_tree.hpp"
#include "botdna/rng.hpp"

namespace botdna {

// Fully-connected network: ReLU hidden layers, single sigmoid output.
struct MlpParams {
    // weights[l][o][i] connects layer input i to unit o; biases align.
    std::vector<Matrix> weights;
    std::vector<std::vector<double>> biases;
};

struct MlpConfig {
    std::vector<std::size_t> hidden_sizes;
    double learning_rate = 1e-3;
    double l2_alpha = 1e-4;
    std::size_t batch_size = 200;
    int max_epochs = 200;
    double tol = 1e-4;
    int patience = 10;  // epochs without improvement before stopping
};

MlpParams fit_mlp(const Matrix& X, const std::vector<int>& y,
                  const MlpConfig& config, Rng& rng);

// Probability of class 1.
double mlp_forward(const MlpParams& params, const std::vector<double>& row);

}  // namespace botdna
