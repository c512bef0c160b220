#pragma once

#include <vector>

#include "qkbench/matrix.hpp"

namespace qkbench {

/// L2-regularized logistic regression. Objective (the usual C convention,
/// intercept unregularized):
///   1/2 ||w||^2 + C * sum_i log(1 + exp(-y_i (w . x_i + b)))
struct LogisticModel {
    std::vector<double> weights;
    double intercept = 0.0;
    double c = 1.0;
};

/// Full-batch gradient descent with backtracking line search; stops when the
/// gradient infinity-norm drops below 1e-6 or after 1000 iterations.
LogisticModel fit_logistic(const Matrix &X, const std::vector<int> &labels, double c = 1.0);

std::vector<double> logistic_decision(const LogisticModel &model, const Matrix &X);

}  // namespace qkbench
