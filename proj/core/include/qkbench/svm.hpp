#pragma once

#include <memory>
#include <vector>

#include "qkbench/kernels.hpp"
#include "qkbench/matrix.hpp"

namespace qkbench {

/// Soft-margin kernel SVM in dual form: alphas satisfy the box constraint
/// 0 <= alpha_i <= C and the equality sum(y_i alpha_i) == 0.
struct SvmModel {
    std::vector<double> alphas;
    double bias = 0.0;
    std::vector<int> support_labels;  // training labels, +/-1
    double C = 1.0;
    std::shared_ptr<const KernelMatrix> train_gram;

    /// Dual objective sum(alpha) - 1/2 sum alpha_i alpha_j y_i y_j K_ij.
    double dual_objective() const;
};

/// Maximal-violating-pair SMO over a precomputed kernel. KKT tolerance 1e-3,
/// at most 10 m^2 pair updates. Pairs with K_ii + K_jj - 2 K_ij == 0
/// (duplicated points) are skipped rather than divided by.
SvmModel solve_svm_dual(std::shared_ptr<const KernelMatrix> gram, const std::vector<int> &labels,
                        double C);

SvmModel solve_svm_dual(const KernelMatrix &gram, const std::vector<int> &labels, double C);

/// Decision values f(z_t) = sum_i y_i alpha_i K(x_i, z_t) + b for a
/// (n_train x n_eval) cross-kernel.
std::vector<double> svm_decision(const SvmModel &model, const KernelMatrix &cross_gram);

/// sign with the tie sign(0) -> +1.
std::vector<int> predict_labels(const std::vector<double> &decisions);

struct EvalResult {
    double accuracy = 0.0;
    std::vector<int> predictions;
};

EvalResult evaluate(const std::vector<int> &predictions, const std::vector<int> &truth);

}  // namespace qkbench
