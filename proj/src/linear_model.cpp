#include "botdna/linear_model.hpp"

#include <cmath>
#include <functional>

namespace botdna {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

namespace {

double margin_of(const std::vector<double>& w, double b,
                 const std::vector<double>& row) {
    double f = b;
    for (std::size_t j = 0; j < w.size(); ++j) f += w[j] * row[j];
    return f;
}

// log(1 + exp(-m)) without overflow for very negative margins.
double log1p_exp_neg(double m) {
    if (m > 0.0) return std::log1p(std::exp(-m));
    return -m + std::log1p(std::exp(m));
}

using LossFn = std::function<double(const Matrix&, const std::vector<int>&,
                                    const std::vector<double>&, double, double,
                                    std::vector<double>&, double&)>;

LinearParams minimize(const Matrix& X, const std::vector<int>& y, double C,
                      int max_iter, const LossFn& loss_grad) {
    std::size_t d = X.empty() ? 0 : X.front().size();
    std::vector<double> w(d, 0.0);
    double b = 0.0;
    std::vector<double> grad_w(d);
    double grad_b = 0.0;
    double loss = loss_grad(X, y, w, b, C, grad_w, grad_b);
    double step = 1.0;

    for (int iter = 0; iter < max_iter; ++iter) {
        double grad_norm_sq = grad_b * grad_b;
        double grad_max = std::abs(grad_b);
        for (double g : grad_w) {
            grad_norm_sq += g * g;
            grad_max = std::max(grad_max, std::abs(g));
        }
        if (grad_max < 1e-6) break;

        std::vector<double> gw = grad_w;
        double gb = grad_b;
        step *= 2.0;  // let the step recover after cautious iterations
        bool moved = false;
        while (step > 1e-16) {
            std::vector<double> w_next(d);
            for (std::size_t j = 0; j < d; ++j) w_next[j] = w[j] - step * gw[j];
            double b_next = b - step * gb;
            double loss_next =
                loss_grad(X, y, w_next, b_next, C, grad_w, grad_b);
            if (loss_next <= loss - 1e-4 * step * grad_norm_sq) {
                w = std::move(w_next);
                b = b_next;
                loss = loss_next;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    return {std::move(w), b};
}

}  // namespace

double logistic_loss_grad(const Matrix& X, const std::vector<int>& y,
                          const std::vector<double>& weights, double bias,
                          double C, std::vector<double>& grad_w,
                          double& grad_b) {
    std::size_t d = weights.size();
    grad_w.assign(d, 0.0);
    grad_b = 0.0;
    double loss = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        double t = y[i] == 1 ? 1.0 : -1.0;
        double m = t * margin_of(weights, bias, X[i]);
        loss += log1p_exp_neg(m);
        double coeff = -t * sigmoid(-m);
        for (std::size_t j = 0; j < d; ++j) grad_w[j] += coeff * X[i][j];
        grad_b += coeff;
    }
    for (std::size_t j = 0; j < d; ++j) {
        loss += weights[j] * weights[j] / (2.0 * C);
        grad_w[j] += weights[j] / C;
    }
    return loss;
}

double squared_hinge_loss_grad(const Matrix& X, const std::vector<int>& y,
                               const std::vector<double>& weights, double bias,
                               double C, std::vector<double>& grad_w,
                               double& grad_b) {
    std::size_t d = weights.size();
    grad_w.assign(d, 0.0);
    grad_b = 0.0;
    double loss = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        double t = y[i] == 1 ? 1.0 : -1.0;
        double slack = 1.0 - t * margin_of(weights, bias, X[i]);
        if (slack <= 0.0) continue;
        loss += C * slack * slack;
        double coeff = -2.0 * C * slack * t;
        for (std::size_t j = 0; j < d; ++j) grad_w[j] += coeff * X[i][j];
        grad_b += coeff;
    }
    for (std::size_t j = 0; j < d; ++j) {
        loss += weights[j] * weights[j] / 2.0;
        grad_w[j] += weights[j];
    }
    return loss;
}

LinearParams fit_logistic_regression(const Matrix& X, const std::vector<int>& y,
                                     double C, int max_iter) {
    return minimize(X, y, C, max_iter, logistic_loss_grad);
}

LinearParams fit_linear_svm(const Matrix& X, const std::vector<int>& y,
                            double C, int max_iter) {
    return minimize(X, y, C, max_iter, squared_hinge_loss_grad);
}

double linear_margin(const LinearParams& params,
                     const std::vector<double>& row) {
    return margin_of(params.weights, params.bias, row);
}

}  // namespace botdna
