#pragma once

#include <span>
#include <vector>

#include "qkbench/simulator.hpp"

namespace qkbench {

enum class FeatureMapKind { ZZ, Covariant };

enum class ParamStrategy { Shared, Dedicated };

/// Trainable fiducial-layer parameters. Shared broadcasts one angle triple
/// to every qubit (3 parameters); Dedicated gives each qubit its own triple
/// (3 * n_qubits parameters).
struct Parameterization {
    ParamStrategy strategy = ParamStrategy::Shared;
    std::vector<double> theta;

    static Parameterization shared(std::vector<double> theta3 = {0, 0, 0});
    static Parameterization dedicated(int n_qubits);
};

/// A feature map plus its fiducial layer: the full embedding U_x * V_theta.
struct EmbeddingSpec {
    FeatureMapKind map = FeatureMapKind::ZZ;
    int n_qubits = 0;
    Parameterization parameterization;

    /// Qubits required by `map` for a given input dimension: ZZ uses one
    /// qubit per feature, Covariant packs two features (one RX, one RZ
    /// angle) per qubit.
    static int qubits_for(FeatureMapKind map, int feature_dim);

    int parameter_count() const {
        return parameterization.strategy == ParamStrategy::Shared ? 3 : 3 * n_qubits;
    }
};

/// One RXYZ gate per qubit from the parameterization.
CircuitSpec build_fiducial(const EmbeddingSpec &spec);

/// Two repetitions of (H layer; single-qubit phases exp(i x_j Z_j); pairwise
/// phases exp(i (pi - x_j)(pi - x_k) Z_j Z_k) over all pairs).
CircuitSpec build_zz_map(std::span<const double> x, int n_qubits);

/// CZ chain over (k, k+1), then per qubit k an RZ(x_{2k+1}) followed by an
/// RX(x_{2k}) (0-based feature indices).
CircuitSpec build_covariant_map(std::span<const double> x, int n_qubits);

/// Fiducial layer first, then the data map.
CircuitSpec build_embedding(const EmbeddingSpec &spec, std::span<const double> x);

}  // namespace qkbench
