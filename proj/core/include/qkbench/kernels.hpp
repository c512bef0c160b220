#pragma once

#include <map>
#include <string>
#include <vector>

#include "qkbench/feature_maps.hpp"
#include "qkbench/matrix.hpp"
#include "qkbench/simulator.hpp"

namespace qkbench {

enum class KernelKind { QuantumFidelity, Linear, Polynomial, RBF };

/// Gram matrix (square self-Gram or rectangular train x eval) with
/// provenance tags. Fidelity kernels have entries in [0, 1] and unit
/// diagonal in the self-Gram case.
struct KernelMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;  // row-major
    KernelKind kind = KernelKind::QuantumFidelity;
    std::map<std::string, std::string> meta;

    double &at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

struct ClassicalKernelParams {
    int degree = 3;       // Polynomial only
    double gamma = 1.0;   // Polynomial and RBF
    double coef0 = 0.0;   // Polynomial only
};

/// Runs the embedding circuit for every row of X. Entries are independent;
/// the fill is parallel.
std::vector<StateVector> embed_all(const EmbeddingSpec &spec, const Matrix &X);

/// values[i][j] = |<b_j|a_i>|^2.
KernelMatrix fidelity_gram(const std::vector<StateVector> &states_a,
                           const std::vector<StateVector> &states_b);

/// Symmetric self-Gram; upper triangle computed once and mirrored.
KernelMatrix fidelity_gram(const std::vector<StateVector> &states);

/// Linear: <a,b>; Polynomial: (gamma <a,b> + coef0)^degree;
/// RBF: exp(-gamma ||a-b||^2).
KernelMatrix classical_gram(KernelKind kind, const ClassicalKernelParams &params,
                            const Matrix &A, const Matrix &B);

/// Polynomial degree used for a given input dimension, chosen so the induced
/// feature-space dimension roughly matches the 2^(2n) density-matrix space
/// of the n-qubit kernels. Pinned to the benchmark's published degrees for
/// the dimensions it uses.
int degree_rule(int feature_dim);

/// 1 / (feature_dim * variance of all entries of X).
double gamma_scale(const Matrix &X);

/// Smallest eigenvalue of a square symmetric kernel matrix.
double min_eigenvalue(const KernelMatrix &gram);

/// CSV dump with 17-significant-digit formatting (round-trip exact).
void write_kernel_csv(const std::string &path, const KernelMatrix &gram);

}  // namespace qkbench
