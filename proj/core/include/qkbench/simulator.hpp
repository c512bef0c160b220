#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "qkbench/errors.hpp"

namespace qkbench {

using Complex = std::complex<double>;

/// Pure n-qubit state as 2^n dense amplitudes. Qubit 0 is the least
/// significant bit of the amplitude index.
struct StateVector {
    int n_qubits = 0;
    std::vector<Complex> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
    double norm() const;
};

enum class GateKind : std::uint8_t { H, RX, RY, RZ, RXYZ, CZ, RZZ };

/// One elementary gate. Rotation convention: RP(t) = exp(-i t P / 2) for
/// P in {X, Y, Z} and RZZ(t) = exp(-i t Z(x)Z / 2). RXYZ(t1, t2, t3) is the
/// three-angle universal single-qubit rotation
///   [ cos(t1/2)              -e^{i t2} sin(t1/2)      ]
///   [ e^{i t3} sin(t1/2)      e^{i(t2+t3)} cos(t1/2)  ]
/// so RXYZ(t, 0, 0) == RY(t).
struct Gate {
    GateKind kind;
    std::array<int, 2> targets{-1, -1};
    std::array<double, 3> angles{0.0, 0.0, 0.0};

    int arity() const { return (kind == GateKind::CZ || kind == GateKind::RZZ) ? 2 : 1; }
    int angle_count() const {
        switch (kind) {
            case GateKind::H:
            case GateKind::CZ: return 0;
            case GateKind::RXYZ: return 3;
            default: return 1;
        }
    }

    static Gate h(int q) { return {GateKind::H, {q, -1}, {}}; }
    static Gate rx(double t, int q) { return {GateKind::RX, {q, -1}, {t, 0, 0}}; }
    static Gate ry(double t, int q) { return {GateKind::RY, {q, -1}, {t, 0, 0}}; }
    static Gate rz(double t, int q) { return {GateKind::RZ, {q, -1}, {t, 0, 0}}; }
    static Gate rxyz(double t1, double t2, double t3, int q) {
        return {GateKind::RXYZ, {q, -1}, {t1, t2, t3}};
    }
    static Gate cz(int q1, int q2) { return {GateKind::CZ, {q1, q2}, {}}; }
    static Gate rzz(double t, int q1, int q2) { return {GateKind::RZZ, {q1, q2}, {t, 0, 0}}; }

    /// Gate with negated angles; H and CZ are self-inverse.
    Gate inverse() const;

    /// 2x2 matrix of a single-qubit gate, row-major.
    std::array<Complex, 4> single_qubit_matrix() const;
};

/// Ordered gate list over a fixed register width.
struct CircuitSpec {
    int n_qubits = 0;
    std::vector<Gate> gates;

    void append(const CircuitSpec &other);
};

/// |0...0> on n qubits. n must be in [1, 20]; dense simulation only.
StateVector zero_state(int n_qubits);

void apply_gate_inplace(StateVector &state, const Gate &gate);

StateVector apply_gate(StateVector state, const Gate &gate);

/// Applies all gates in order to the zero state.
StateVector run_circuit(const CircuitSpec &spec);

/// <a|b> = sum conj(a_k) b_k.
Complex inner_product(const StateVector &a, const StateVector &b);

}  // namespace qkbench
