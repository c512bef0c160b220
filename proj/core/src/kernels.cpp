#include "qkbench/kernels.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace qkbench {

std::vector<StateVector> embed_all(const EmbeddingSpec &spec, const Matrix &X) {
    const int expected = spec.map == FeatureMapKind::ZZ ? spec.n_qubits : 2 * spec.n_qubits;
    if (static_cast<int>(X.cols()) != expected) {
        throw ConfigError("feature dimension " + std::to_string(X.cols()) +
                          " inconsistent with embedding (" + std::to_string(expected) + ")");
    }
    std::vector<StateVector> states(X.rows());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(X.rows()); ++i) {
        states[i] = run_circuit(build_embedding(spec, X.row(i)));
    }
    return states;
}

KernelMatrix fidelity_gram(const std::vector<StateVector> &states_a,
                           const std::vector<StateVector> &states_b) {
    for (const auto &s : states_a) {
        if (s.n_qubits != states_a.front().n_qubits) {
            throw ContractViolation("mixed qubit counts in Gram input");
        }
    }
    if (!states_a.empty() && !states_b.empty() &&
        states_a.front().n_qubits != states_b.front().n_qubits) {
        throw ContractViolation("Gram input qubit count mismatch");
    }
    KernelMatrix km;
    km.rows = states_a.size();
    km.cols = states_b.size();
    km.kind = KernelKind::QuantumFidelity;
    km.values.assign(km.rows * km.cols, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(km.rows); ++i) {
        for (std::size_t j = 0; j < km.cols; ++j) {
            km.values[i * km.cols + j] = std::norm(inner_product(states_b[j], states_a[i]));
        }
    }
    return km;
}

KernelMatrix fidelity_gram(const std::vector<StateVector> &states) {
    KernelMatrix km;
    km.rows = km.cols = states.size();
    km.kind = KernelKind::QuantumFidelity;
    km.values.assign(km.rows * km.cols, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(km.rows); ++i) {
        km.values[i * km.cols + i] = std::norm(inner_product(states[i], states[i]));
        for (std::size_t j = i + 1; j < km.cols; ++j) {
            const double v = std::norm(inner_product(states[j], states[i]));
            km.values[i * km.cols + j] = v;
            km.values[j * km.cols + i] = v;
        }
    }
    return km;
}

KernelMatrix classical_gram(KernelKind kind, const ClassicalKernelParams &params,
                            const Matrix &A, const Matrix &B) {
    if (A.cols() != B.cols()) throw ContractViolation("classical Gram feature dim mismatch");
    if (kind == KernelKind::QuantumFidelity) {
        throw ContractViolation("classical_gram cannot build fidelity kernels");
    }
    if ((kind == KernelKind::Polynomial || kind == KernelKind::RBF) && params.gamma <= 0.0) {
        throw ConfigError("kernel gamma must be positive");
    }
    if (kind == KernelKind::Polynomial && params.degree < 1) {
        throw ConfigError("polynomial degree must be >= 1");
    }
    KernelMatrix km;
    km.rows = A.rows();
    km.cols = B.rows();
    km.kind = kind;
    km.values.assign(km.rows * km.cols, 0.0);
    const std::size_t d = A.cols();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(km.rows); ++i) {
        for (std::size_t j = 0; j < km.cols; ++j) {
            double v = 0.0;
            switch (kind) {
                case KernelKind::Linear:
                case KernelKind::Polynomial: {
                    for (std::size_t k = 0; k < d; ++k) v += A(i, k) * B(j, k);
                    if (kind == KernelKind::Polynomial) {
                        v = std::pow(params.gamma * v + params.coef0, params.degree);
                    }
                    break;
                }
                case KernelKind::RBF: {
                    for (std::size_t k = 0; k < d; ++k) {
                        const double diff = A(i, k) - B(j, k);
                        v += diff * diff;
                    }
                    v = std::exp(-params.gamma * v);
                    break;
                }
                default: break;
            }
            km.values[i * km.cols + j] = v;
        }
    }
    return km;
}

int degree_rule(int feature_dim) {
    if (feature_dim < 1) throw ConfigError("feature_dim must be >= 1");
    // Degrees used by the benchmark for its published dimensions.
    switch (feature_dim) {
        case 2: return 4;
        case 4: return 7;
        case 8: return 11;
        case 14: return 17;
        default: break;
    }
    // General fallback: degree whose induced polynomial feature-space size
    // C(n + k, k) is closest (log scale) to the 2^(2n) target.
    const double target = 2.0 * feature_dim * std::numbers::ln2;
    int best_k = 1;
    double best_err = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 4 * feature_dim + 8; ++k) {
        const double log_dim = std::lgamma(feature_dim + k + 1.0) - std::lgamma(k + 1.0) -
                               std::lgamma(feature_dim + 1.0);
        const double err = std::abs(log_dim - target);
        if (err < best_err) {
            best_err = err;
            best_k = k;
        }
    }
    return best_k;
}

double gamma_scale(const Matrix &X) {
    if (X.empty()) throw ConfigError("gamma_scale needs a nonempty matrix");
    const auto &d = X.data();
    double mean = 0.0;
    for (double v : d) mean += v;
    mean /= static_cast<double>(d.size());
    double var = 0.0;
    for (double v : d) var += (v - mean) * (v - mean);
    var /= static_cast<double>(d.size());
    if (var <= 0.0) throw ConfigError("gamma_scale undefined for constant features");
    return 1.0 / (static_cast<double>(X.cols()) * var);
}

double min_eigenvalue(const KernelMatrix &gram) {
    if (gram.rows != gram.cols) throw ContractViolation("min_eigenvalue needs a square matrix");
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        gram.values.data(), gram.rows, gram.cols);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.selfadjointView<Eigen::Lower>());
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solve failed");
    return solver.eigenvalues().minCoeff();
}

void write_kernel_csv(const std::string &path, const KernelMatrix &gram) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    char buf[64];
    for (std::size_t i = 0; i < gram.rows; ++i) {
        for (std::size_t j = 0; j < gram.cols; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", gram.at(i, j));
            out << buf << (j + 1 < gram.cols ? "," : "");
        }
        out << "\n";
    }
}

}  // namespace qkbench
