#include "qkbench/svm.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

namespace qkbench {

namespace {

constexpr double kKktTol = 1e-3;
constexpr double kEtaFloor = 1e-12;

void check_labels(const std::vector<int> &labels) {
    bool pos = false, neg = false;
    for (int y : labels) {
        if (y == 1) pos = true;
        else if (y == -1) neg = true;
        else throw ConfigError("labels must be +1 or -1");
    }
    if (!pos || !neg) throw ConfigError("SVM training needs both classes present");
}

}  // namespace

double SvmModel::dual_objective() const {
    const KernelMatrix &K = *train_gram;
    const std::size_t m = alphas.size();
    double lin = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (alphas[i] == 0.0) continue;
        lin += alphas[i];
        for (std::size_t j = 0; j < m; ++j) {
            if (alphas[j] == 0.0) continue;
            quad += alphas[i] * alphas[j] * support_labels[i] * support_labels[j] * K.at(i, j);
        }
    }
    return lin - 0.5 * quad;
}

SvmModel solve_svm_dual(std::shared_ptr<const KernelMatrix> gram, const std::vector<int> &labels,
                        double C) {
    const KernelMatrix &K = *gram;
    if (K.rows != K.cols) throw ContractViolation("training Gram must be square");
    if (K.rows != labels.size()) throw ContractViolation("labels/Gram size mismatch");
    if (C <= 0.0) throw ConfigError("C must be positive");
    check_labels(labels);

    const std::size_t m = labels.size();
    std::vector<double> alpha(m, 0.0);
    // Gradient of 1/2 a^T Q a - e^T a with Q_ij = y_i y_j K_ij; G = -e at a = 0.
    std::vector<double> grad(m, -1.0);
    const auto y = [&](std::size_t i) { return static_cast<double>(labels[i]); };

    bool warned_indefinite = false;
    const std::size_t max_updates = 10 * m * m;
    for (std::size_t update = 0; update < max_updates; ++update) {
        // Maximal violating pair: i maximizes -y_i G_i over I_up, j minimizes
        // it over I_low. Convergence when the gap closes below tolerance.
        double up_val = -std::numeric_limits<double>::infinity();
        double low_val = std::numeric_limits<double>::infinity();
        std::size_t i_sel = m;
        for (std::size_t i = 0; i < m; ++i) {
            const bool in_up = (labels[i] == 1 && alpha[i] < C) || (labels[i] == -1 && alpha[i] > 0);
            if (in_up && -y(i) * grad[i] > up_val) {
                up_val = -y(i) * grad[i];
                i_sel = i;
            }
            const bool in_low = (labels[i] == -1 && alpha[i] < C) || (labels[i] == 1 && alpha[i] > 0);
            if (in_low) low_val = std::min(low_val, -y(i) * grad[i]);
        }
        if (i_sel == m || up_val - low_val < kKktTol) break;

        // Among violating I_low candidates, take the most violating one with
        // positive curvature; eta == 0 pairs (duplicate points) are skipped.
        std::size_t j_sel = m;
        double j_val = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < m; ++j) {
            const bool in_low = (labels[j] == -1 && alpha[j] < C) || (labels[j] == 1 && alpha[j] > 0);
            if (!in_low) continue;
            const double v = -y(j) * grad[j];
            if (up_val - v < kKktTol) continue;
            const double eta = K.at(i_sel, i_sel) + K.at(j, j) - 2.0 * K.at(i_sel, j);
            if (eta < -1e-8 && !warned_indefinite) {
                std::cerr << "qkbench: warning: kernel matrix not PSD along pair (" << i_sel
                          << "," << j << "), eta=" << eta << "; proceeding\n";
                warned_indefinite = true;
            }
            if (eta <= kEtaFloor) continue;
            if (v < j_val) {
                j_val = v;
                j_sel = j;
            }
        }
        if (j_sel == m) break;  // no usable partner: every direction is flat

        const double eta =
            K.at(i_sel, i_sel) + K.at(j_sel, j_sel) - 2.0 * K.at(i_sel, j_sel);
        // Unconstrained minimizer along the direction d_i = +y_i, d_j = -y_j,
        // then clipped so both alphas stay inside the box.
        const double cap_i = labels[i_sel] == 1 ? C - alpha[i_sel] : alpha[i_sel];
        const double cap_j = labels[j_sel] == 1 ? alpha[j_sel] : C - alpha[j_sel];
        const double t = std::min({(up_val - j_val) / eta, cap_i, cap_j});
        if (t <= 0.0) break;

        const double delta_i = y(i_sel) * t;
        const double delta_j = -y(j_sel) * t;
        alpha[i_sel] += delta_i;
        alpha[j_sel] += delta_j;
        for (std::size_t k = 0; k < m; ++k) {
            grad[k] += y(k) * (y(i_sel) * K.at(k, i_sel) * delta_i +
                               y(j_sel) * K.at(k, j_sel) * delta_j);
        }
    }

    SvmModel model;
    model.alphas = std::move(alpha);
    model.support_labels = labels;
    model.C = C;
    model.train_gram = std::move(gram);

    // Bias from free support vectors (0 < alpha < C); fall back to the
    // midpoint of the violating bounds when none exist.
    double acc = 0.0;
    std::size_t n_free = 0;
    const double slack = 1e-9 * C;
    for (std::size_t i = 0; i < m; ++i) {
        if (model.alphas[i] > slack && model.alphas[i] < C - slack) {
            double u = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                u += model.alphas[j] * y(j) * K.at(j, i);
            }
            acc += y(i) - u;
            ++n_free;
        }
    }
    if (n_free > 0) {
        model.bias = acc / static_cast<double>(n_free);
    } else {
        double up_val = -std::numeric_limits<double>::infinity();
        double low_val = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            double u = 0.0;
            for (std::size_t j = 0; j < m; ++j) u += model.alphas[j] * y(j) * K.at(j, i);
            const double v = y(i) - u;
            const bool in_up =
                (labels[i] == 1 && model.alphas[i] < C) || (labels[i] == -1 && model.alphas[i] > 0);
            const bool in_low =
                (labels[i] == -1 && model.alphas[i] < C) || (labels[i] == 1 && model.alphas[i] > 0);
            if (in_up) up_val = std::max(up_val, v);
            if (in_low) low_val = std::min(low_val, v);
        }
        model.bias = 0.5 * (up_val + low_val);
    }
    return model;
}

SvmModel solve_svm_dual(const KernelMatrix &gram, const std::vector<int> &labels, double C) {
    return solve_svm_dual(std::make_shared<KernelMatrix>(gram), labels, C);
}

std::vector<double> svm_decision(const SvmModel &model, const KernelMatrix &cross_gram) {
    const std::size_t m = model.alphas.size();
    if (cross_gram.rows != m) {
        throw ContractViolation("cross Gram must have one row per training point");
    }
    std::vector<double> f(cross_gram.cols, model.bias);
    for (std::size_t i = 0; i < m; ++i) {
        const double w = model.alphas[i] * model.support_labels[i];
        if (w == 0.0) continue;
        for (std::size_t t = 0; t < cross_gram.cols; ++t) {
            f[t] += w * cross_gram.at(i, t);
        }
    }
    return f;
}

std::vector<int> predict_labels(const std::vector<double> &decisions) {
    std::vector<int> labels(decisions.size());
    for (std::size_t i = 0; i < decisions.size(); ++i) {
        labels[i] = decisions[i] < 0.0 ? -1 : 1;
    }
    return labels;
}

EvalResult evaluate(const std::vector<int> &predictions, const std::vector<int> &truth) {
    if (predictions.size() != truth.size()) {
        throw ContractViolation("predictions/truth length mismatch");
    }
    EvalResult r;
    r.predictions = predictions;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (predictions[i] == truth[i]) ++hits;
    }
    r.accuracy = truth.empty() ? 0.0 : static_cast<double>(hits) / truth.size();
    return r;
}

}  // namespace qkbench
