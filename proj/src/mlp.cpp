#include "botdna/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "botdna/linear_model.hpp"

namespace botdna {

namespace {

struct AdamState {
    std::vector<Matrix> m_w, v_w;
    std::vector<std::vector<double>> m_b, v_b;
    double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    long step = 0;
};

std::vector<std::size_t> layer_sizes(std::size_t input,
                                     const std::vector<std::size_t>& hidden) {
    std::vector<std::size_t> sizes = {input};
    sizes.insert(sizes.end(), hidden.begin(), hidden.end());
    sizes.push_back(1);
    return sizes;
}

// Forward pass keeping each layer's post-activation output.
double forward(const MlpParams& p, const std::vector<double>& row,
               std::vector<std::vector<double>>* activations) {
    std::vector<double> cur = row;
    if (activations) activations->push_back(cur);
    for (std::size_t l = 0; l < p.weights.size(); ++l) {
        bool output_layer = l + 1 == p.weights.size();
        std::vector<double> next(p.weights[l].size());
        for (std::size_t o = 0; o < next.size(); ++o) {
            double z = p.biases[l][o];
            const auto& w = p.weights[l][o];
            for (std::size_t i = 0; i < cur.size(); ++i) z += w[i] * cur[i];
            next[o] = output_layer ? sigmoid(z) : std::max(0.0, z);
        }
        cur = std::move(next);
        if (activations) activations->push_back(cur);
    }
    return cur[0];
}

}  // namespace

MlpParams fit_mlp(const Matrix& X, const std::vector<int>& y,
                  const MlpConfig& config, Rng& rng) {
    std::size_t d = X.empty() ? 0 : X.front().size();
    auto sizes = layer_sizes(d, config.hidden_sizes);

    MlpParams p;
    AdamState adam;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        std::size_t fan_in = sizes[l], fan_out = sizes[l + 1];
        double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        Matrix w(fan_out, std::vector<double>(fan_in));
        for (auto& row : w)
            for (double& v : row) v = rng.uniform(-limit, limit);
        p.weights.push_back(std::move(w));
        p.biases.emplace_back(fan_out, 0.0);
        adam.m_w.emplace_back(fan_out, std::vector<double>(fan_in, 0.0));
        adam.v_w.emplace_back(fan_out, std::vector<double>(fan_in, 0.0));
        adam.m_b.emplace_back(fan_out, 0.0);
        adam.v_b.emplace_back(fan_out, 0.0);
    }

    std::vector<std::size_t> order(X.size());
    std::iota(order.begin(), order.end(), 0);
    std::size_t batch = std::max<std::size_t>(
        1, std::min(config.batch_size, X.size()));

    double best_loss = std::numeric_limits<double>::infinity();
    int stale_epochs = 0;

    for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
        rng.shuffle(order);
        double epoch_loss = 0.0;

        for (std::size_t start = 0; start < order.size(); start += batch) {
            std::size_t end = std::min(start + batch, order.size());
            double inv_n = 1.0 / static_cast<double>(end - start);

            std::vector<Matrix> grad_w;
            std::vector<std::vector<double>> grad_b;
            for (std::size_t l = 0; l < p.weights.size(); ++l) {
                grad_w.emplace_back(p.weights[l].size(),
                                    std::vector<double>(sizes[l], 0.0));
                grad_b.emplace_back(p.weights[l].size(), 0.0);
            }

            for (std::size_t k = start; k < end; ++k) {
                const auto& row = X[order[k]];
                double target = static_cast<double>(y[order[k]]);
                std::vector<std::vector<double>> acts;
                double out = forward(p, row, &acts);
                double eps = 1e-12;
                epoch_loss -= target * std::log(out + eps) +
                              (1.0 - target) * std::log(1.0 - out + eps);

                // delta of the output's pre-activation under cross-entropy
                std::vector<double> delta = {out - target};
                for (std::size_t l = p.weights.size(); l-- > 0;) {
                    const auto& input = acts[l];
                    for (std::size_t o = 0; o < delta.size(); ++o) {
                        grad_b[l][o] += delta[o] * inv_n;
                        for (std::size_t i = 0; i < input.size(); ++i)
                            grad_w[l][o][i] += delta[o] * input[i] * inv_n;
                    }
                    if (l == 0) break;
                    std::vector<double> prev(sizes[l], 0.0);
                    for (std::size_t o = 0; o < delta.size(); ++o)
                        for (std::size_t i = 0; i < prev.size(); ++i)
                            prev[i] += p.weights[l][o][i] * delta[o];
                    for (std::size_t i = 0; i < prev.size(); ++i)
                        if (acts[l][i] <= 0.0) prev[i] = 0.0;
                    delta = std::move(prev);
                }
            }

            ++adam.step;
            double bc1 = 1.0 - std::pow(adam.beta1, adam.step);
            double bc2 = 1.0 - std::pow(adam.beta2, adam.step);
            for (std::size_t l = 0; l < p.weights.size(); ++l) {
                for (std::size_t o = 0; o < p.weights[l].size(); ++o) {
                    for (std::size_t i = 0; i < p.weights[l][o].size(); ++i) {
                        double g = grad_w[l][o][i] +
                                   config.l2_alpha * p.weights[l][o][i] * inv_n;
                        double& m = adam.m_w[l][o][i];
                        double& v = adam.v_w[l][o][i];
                        m = adam.beta1 * m + (1.0 - adam.beta1) * g;
                        v = adam.beta2 * v + (1.0 - adam.beta2) * g * g;
                        p.weights[l][o][i] -= config.learning_rate * (m / bc1) /
                                              (std::sqrt(v / bc2) + adam.eps);
                    }
                    double g = grad_b[l][o];
                    double& m = adam.m_b[l][o];
                    double& v = adam.v_b[l][o];
                    m = adam.beta1 * m + (1.0 - adam.beta1) * g;
                    v = adam.beta2 * v + (1.0 - adam.beta2) * g * g;
                    p.biases[l][o] -= config.learning_rate * (m / bc1) /
                                      (std::sqrt(v / bc2) + adam.eps);
                }
            }
        }

        epoch_loss /= static_cast<double>(X.size());
        if (epoch_loss < best_loss - config.tol) {
            best_loss = epoch_loss;
            stale_epochs = 0;
        } else if (++stale_epochs >= config.patience) {
            break;
        }
    }
    return p;
}

double mlp_forward(const MlpParams& params, const std::vector<double>& row) {
    return forward(params, row, nullptr);
}

}  // namespace botdna
