#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qkbench/kernels.hpp"
#include "qkbench/svm.hpp"

namespace qkbench {

/// Kernel-target alignment: cosine similarity between the Gram matrix and
/// the ideal label kernel y y^T. Always in [-1, 1].
double target_alignment(const KernelMatrix &gram, const std::vector<int> &labels);

/// SVM dual objective at its inner maximizer, used as the minimization
/// target for kernel training (weighted alignment).
struct SvcLoss {
    double value = 0.0;
    std::vector<double> alphas;
};

SvcLoss svc_loss(std::shared_ptr<const KernelMatrix> gram, const std::vector<int> &labels,
                 double C);
SvcLoss svc_loss(const KernelMatrix &gram, const std::vector<int> &labels, double C);

struct SpsaConfig {
    int max_iterations = 400;
    double alpha_exp = 0.602;  // learning-rate decay exponent
    double gamma_exp = 0.101;  // perturbation decay exponent
    double stability_a = -1.0;          // auto: 0.1 * max_iterations
    double learning_rate = -1.0;        // auto: calibrated at theta0
    double perturbation = -1.0;         // auto: 0.2
    double hessian_regularization = 0.01;
    std::uint64_t seed = 0;
    double budget_seconds = 0.0;  // 0 = unlimited; else stop early, keep best
};

struct QktReport {
    std::vector<double> loss_trace;               // loss at theta_k, k = 0..N
    std::vector<std::vector<double>> theta_trace;  // theta_k
    std::vector<double> best_theta;
    double best_loss = 0.0;
    long evaluations = 0;  // objective calls including calibration
    std::uint64_t seed = 0;
};

using Objective = std::function<double(const std::vector<double> &)>;

/// One SPSA gradient estimate at `theta`: symmetric Bernoulli perturbation
/// Delta drawn from the (seed, iteration, draw) counter stream, estimate
/// [f(theta + c Delta) - f(theta - c Delta)] / (2 c) * Delta^-1 elementwise.
std::vector<double> spsa_gradient_estimate(const Objective &objective,
                                           const std::vector<double> &theta, double c,
                                           std::uint64_t seed, std::uint64_t iteration);

/// Second-order SPSA minimizer: per iteration, two perturbation pairs
/// estimate the gradient and a rank-one Hessian term; the averaged Hessian
/// preconditions the step. Reports the best theta seen over the whole run.
QktReport spsa_minimize(const Objective &objective, std::vector<double> theta0,
                        const SpsaConfig &config);

/// QKT: minimizes theta -> svc_loss(fidelity Gram at theta) from theta0 = 0.
QktReport train_quantum_kernel(const EmbeddingSpec &spec, const Matrix &x_train,
                               const std::vector<int> &labels, double C,
                               const SpsaConfig &config);

std::string qkt_report_to_json(const QktReport &report);
void write_qkt_report(const std::string &path, const QktReport &report);

}  // namespace qkbench
