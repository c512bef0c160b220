#include "qkbench/simulator.hpp"

#include <cmath>
#include <string>

namespace qkbench {

namespace {

constexpr int kMaxQubits = 20;

void check_target(const StateVector &state, int q) {
    if (q < 0 || q >= state.n_qubits) {
        throw ContractViolation("gate target " + std::to_string(q) + " out of range for " +
                                std::to_string(state.n_qubits) + " qubits");
    }
}

}  // namespace

double StateVector::norm() const {
    double s = 0.0;
    for (const Complex &a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

Gate Gate::inverse() const {
    Gate inv = *this;
    switch (kind) {
        case GateKind::H:
        case GateKind::CZ: break;
        case GateKind::RXYZ:
            // (RXYZ(t1,t2,t3))^-1 = RXYZ(-t1,-t3,-t2): transpose-conjugate
            // swaps the two phase angles.
            inv.angles = {-angles[0], -angles[2], -angles[1]};
            break;
        default: inv.angles[0] = -angles[0]; break;
    }
    return inv;
}

std::array<Complex, 4> Gate::single_qubit_matrix() const {
    using namespace std::complex_literals;
    switch (kind) {
        case GateKind::H: {
            const double s = 1.0 / std::sqrt(2.0);
            return {s, s, s, -s};
        }
        case GateKind::RX: {
            const double c = std::cos(angles[0] / 2), s = std::sin(angles[0] / 2);
            return {c, -1i * s, -1i * s, c};
        }
        case GateKind::RY: {
            const double c = std::cos(angles[0] / 2), s = std::sin(angles[0] / 2);
            return {c, -s, s, c};
        }
        case GateKind::RZ: {
            const Complex e = std::exp(-0.5i * angles[0]);
            return {e, 0.0, 0.0, std::conj(e)};
        }
        case GateKind::RXYZ: {
            const double c = std::cos(angles[0] / 2), s = std::sin(angles[0] / 2);
            return {c, -std::exp(1i * angles[1]) * s, std::exp(1i * angles[2]) * s,
                    std::exp(1i * (angles[1] + angles[2])) * c};
        }
        default: throw ContractViolation("two-qubit gate has no 2x2 matrix");
    }
}

void CircuitSpec::append(const CircuitSpec &other) {
    if (other.n_qubits != n_qubits) throw ContractViolation("circuit width mismatch");
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

StateVector zero_state(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ConfigError("n_qubits must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                          std::to_string(n_qubits));
    }
    StateVector s;
    s.n_qubits = n_qubits;
    s.amplitudes.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    s.amplitudes[0] = 1.0;
    return s;
}

void apply_gate_inplace(StateVector &state, const Gate &gate) {
    check_target(state, gate.targets[0]);
    if (gate.arity() == 2) {
        check_target(state, gate.targets[1]);
        if (gate.targets[0] == gate.targets[1]) {
            throw ContractViolation("two-qubit gate targets must be distinct");
        }
    }

    auto &amp = state.amplitudes;
    const std::size_t dim = amp.size();

    switch (gate.kind) {
        case GateKind::CZ: {
            const std::size_t m0 = std::size_t{1} << gate.targets[0];
            const std::size_t m1 = std::size_t{1} << gate.targets[1];
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & m0) && (i & m1)) amp[i] = -amp[i];
            }
            return;
        }
        case GateKind::RZZ: {
            const std::size_t m0 = std::size_t{1} << gate.targets[0];
            const std::size_t m1 = std::size_t{1} << gate.targets[1];
            const Complex even = std::exp(Complex{0.0, -gate.angles[0] / 2});
            const Complex odd = std::conj(even);
            for (std::size_t i = 0; i < dim; ++i) {
                const bool b0 = (i & m0) != 0, b1 = (i & m1) != 0;
                amp[i] *= (b0 == b1) ? even : odd;
            }
            return;
        }
        default: break;
    }

    const auto m = gate.single_qubit_matrix();
    const std::size_t mask = std::size_t{1} << gate.targets[0];
    const std::size_t lo = mask - 1;
    const std::size_t hi = ~lo;
    const std::size_t pairs = dim >> 1;
    for (std::size_t p = 0; p < pairs; ++p) {
        const std::size_t i0 = ((p & hi) << 1) | (p & lo);
        const std::size_t i1 = i0 | mask;
        const Complex a0 = amp[i0], a1 = amp[i1];
        amp[i0] = m[0] * a0 + m[1] * a1;
        amp[i1] = m[2] * a0 + m[3] * a1;
    }
}

StateVector apply_gate(StateVector state, const Gate &gate) {
    apply_gate_inplace(state, gate);
    return state;
}

StateVector run_circuit(const CircuitSpec &spec) {
    StateVector state = zero_state(spec.n_qubits);
    for (const Gate &g : spec.gates) apply_gate_inplace(state, g);
    return state;
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.n_qubits != b.n_qubits) throw ContractViolation("inner product dimension mismatch");
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < a.amplitudes.size(); ++k) {
        acc += std::conj(a.amplitudes[k]) * b.amplitudes[k];
    }
    return acc;
}

}  // namespace qkbench
