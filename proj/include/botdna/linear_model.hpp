#pragma once

#include <vector>

#include "botdna/decision_tree.hpp"

namespace botdna {

struct LinearParams {
    std::vector<double> weights;
    double bias = 0.0;
};

double sigmoid(double z);

// L2-regularized logistic loss and its gradient at (weights, bias):
//   sum_i log(1 + exp(-t_i f_i)) + ||w||^2 / (2C),  t_i = 2 y_i - 1.
// The bias is not penalized.  Exposed so the gradient can be checked
// against finite differences.
double logistic_loss_grad(const Matrix& X, const std::vector<int>& y,
                          const std::vector<double>& weights, double bias,
                          double C, std::vector<double>& grad_w,
                          double& grad_b);

// Squared-hinge loss of a linear margin classifier:
//   ||w||^2 / 2 + C * sum_i max(0, 1 - t_i f_i)^2.
double squared_hinge_loss_grad(const Matrix& X, const std::vector<int>& y,
                               const std::vector<double>& weights, double bias,
                               double C, std::vector<double>& grad_w,
                               double& grad_b);

// Full-batch gradient descent with Armijo backtracking on either loss.
LinearParams fit_logistic_regression(const Matrix& X, const std::vector<int>& y,
                                     double C = 1.0, int max_iter = 1000);
LinearParams fit_linear_svm(const Matrix& X, const std::vector<int>& y,
                            double C = 1.0, int max_iter = 1000);

double linear_margin(const LinearParams& params, const std::vector<double>& row);

}  // namespace botdna
