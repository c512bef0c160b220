#include "qkbench/feature_maps.hpp"

#include <numbers>
#include <string>

namespace qkbench {

namespace {
constexpr double kPi = std::numbers::pi;
}

Parameterization Parameterization::shared(std::vector<double> theta3) {
    if (theta3.size() != 3) throw ConfigError("shared parameterization needs 3 angles");
    return {ParamStrategy::Shared, std::move(theta3)};
}

Parameterization Parameterization::dedicated(int n_qubits) {
    return {ParamStrategy::Dedicated, std::vector<double>(3 * n_qubits, 0.0)};
}

int EmbeddingSpec::qubits_for(FeatureMapKind map, int feature_dim) {
    if (map == FeatureMapKind::ZZ) return feature_dim;
    if (feature_dim % 2 != 0) {
        throw ConfigError("covariant map needs an even feature dimension, got " +
                          std::to_string(feature_dim));
    }
    return feature_dim / 2;
}

CircuitSpec build_fiducial(const EmbeddingSpec &spec) {
    const auto &p = spec.parameterization;
    const std::size_t want = p.strategy == ParamStrategy::Shared
                                 ? 3u
                                 : 3u * static_cast<std::size_t>(spec.n_qubits);
    if (p.theta.size() != want) {
        throw ConfigError("fiducial parameter count mismatch: want " + std::to_string(want) +
                          ", got " + std::to_string(p.theta.size()));
    }
    CircuitSpec c{spec.n_qubits, {}};
    c.gates.reserve(spec.n_qubits);
    for (int q = 0; q < spec.n_qubits; ++q) {
        const std::size_t base = p.strategy == ParamStrategy::Shared ? 0 : 3u * q;
        c.gates.push_back(Gate::rxyz(p.theta[base], p.theta[base + 1], p.theta[base + 2], q));
    }
    return c;
}

CircuitSpec build_zz_map(std::span<const double> x, int n_qubits) {
    if (n_qubits < 2) throw ConfigError("ZZ map needs at least 2 qubits");
    if (static_cast<int>(x.size()) != n_qubits) {
        throw ConfigError("ZZ map needs one feature per qubit");
    }
    CircuitSpec c{n_qubits, {}};
    constexpr int reps = 2;
    for (int rep = 0; rep < reps; ++rep) {
        for (int q = 0; q < n_qubits; ++q) c.gates.push_back(Gate::h(q));
        // exp(i phi Z) realized as RZ(-2 phi); global phase is unobservable
        // in the fidelity kernel.
        for (int q = 0; q < n_qubits; ++q) c.gates.push_back(Gate::rz(-2.0 * x[q], q));
        for (int j = 0; j < n_qubits; ++j) {
            for (int k = j + 1; k < n_qubits; ++k) {
                const double phi = (kPi - x[j]) * (kPi - x[k]);
                c.gates.push_back(Gate::rzz(-2.0 * phi, j, k));
            }
        }
    }
    return c;
}

CircuitSpec build_covariant_map(std::span<const double> x, int n_qubits) {
    if (static_cast<int>(x.size()) != 2 * n_qubits) {
        throw ConfigError("covariant map needs 2 features per qubit");
    }
    CircuitSpec c{n_qubits, {}};
    for (int q = 0; q + 1 < n_qubits; ++q) c.gates.push_back(Gate::cz(q, q + 1));
    for (int q = 0; q < n_qubits; ++q) {
        c.gates.push_back(Gate::rz(x[2 * q + 1], q));
        c.gates.push_back(Gate::rx(x[2 * q], q));
    }
    return c;
}

CircuitSpec build_embedding(const EmbeddingSpec &spec, std::span<const double> x) {
    CircuitSpec c = build_fiducial(spec);
    c.append(spec.map == FeatureMapKind::ZZ ? build_zz_map(x, spec.n_qubits)
                                            : build_covariant_map(x, spec.n_qubits));
    return c;
}

}  // namespace qkbench
