#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ansatzlab/linalg.hpp"

namespace ansatzlab {

/// Gate alphabet of the library. Rotations carry an angle, X/CX are fixed.
enum class GateKind { RX, RY, RZ, X, CX };

inline bool is_rotation(GateKind k) { return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ; }

inline const char* gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::X: return "X";
        case GateKind::CX: return "CX";
    }
    return "?";
}

/// Dense amplitude vector over n qubits. Bit convention is little-endian:
/// qubit q contributes 2^q to the basis index.
struct Statevector {
    int n_qubits = 0;
    std::vector<cxd> amps;

    Statevector() = default;
    explicit Statevector(int n) : n_qubits(n), amps(size_t(1) << n, cxd(0, 0)) { amps[0] = 1.0; }

    static Statevector basis(int n, uint64_t index) {
        Statevector s(n);
        s.amps[0] = 0.0;
        s.amps[index] = 1.0;
        return s;
    }

    size_t dim() const { return amps.size(); }

    double norm() const {
        double s = 0.0;
        for (const cxd& a : amps) s += std::norm(a);
        return std::sqrt(s);
    }
};

namespace detail {

inline void apply_1q(std::vector<cxd>& amps, int q, const Mat2& m) {
    const size_t stride = size_t(1) << q;
    const size_t n = amps.size();
    for (size_t base = 0; base < n; base += 2 * stride) {
        for (size_t i = base; i < base + stride; ++i) {
            const cxd a0 = amps[i], a1 = amps[i + stride];
            amps[i] = m.m00 * a0 + m.m01 * a1;
            amps[i + stride] = m.m10 * a0 + m.m11 * a1;
        }
    }
}

inline void apply_x(std::vector<cxd>& amps, int q) {
    const size_t stride = size_t(1) << q;
    const size_t n = amps.size();
    for (size_t base = 0; base < n; base += 2 * stride) {
        for (size_t i = base; i < base + stride; ++i) std::swap(amps[i], amps[i + stride]);
    }
}

inline void apply_cx(std::vector<cxd>& amps, int control, int target) {
    const uint64_t cbit = uint64_t(1) << control;
    const uint64_t tbit = uint64_t(1) << target;
    const uint64_t n = amps.size();
    for (uint64_t i = 0; i < n; ++i) {
        if ((i & cbit) && !(i & tbit)) std::swap(amps[i], amps[i | tbit]);
    }
}

}  // namespace detail

/// Applies one gate in place. `qubits` is {q} for single-qubit kinds and
/// {control, target} for CX. Rotations require an angle.
inline void apply_gate_inplace(Statevector& state, GateKind kind, std::span<const int> qubits,
                               double angle = 0.0) {
    for (int q : qubits) {
        if (q < 0 || q >= state.n_qubits) fail(ErrorKind::IndexOutOfRange, "qubit index");
    }
    switch (kind) {
        case GateKind::RX: detail::apply_1q(state.amps, qubits[0], rx_mat(angle)); break;
        case GateKind::RY: detail::apply_1q(state.amps, qubits[0], ry_mat(angle)); break;
        case GateKind::RZ: detail::apply_1q(state.amps, qubits[0], rz_mat(angle)); break;
        case GateKind::X: detail::apply_x(state.amps, qubits[0]); break;
        case GateKind::CX:
            if (qubits.size() != 2 || qubits[0] == qubits[1])
                fail(ErrorKind::IndexOutOfRange, "CX needs two distinct qubits");
            detail::apply_cx(state.amps, qubits[0], qubits[1]);
            break;
    }
}

/// Pure variant of apply_gate_inplace.
inline Statevector apply_gate(Statevector state, GateKind kind, std::span<const int> qubits,
                              double angle = 0.0) {
    apply_gate_inplace(state, kind, qubits, angle);
    return state;
}

/// Applies a Pauli operator (X, Y or Z on one qubit) in place. Used for
/// analytic derivatives and expectation values.
inline void apply_pauli_inplace(Statevector& state, char pauli, int q) {
    const size_t stride = size_t(1) << q;
    const size_t n = state.amps.size();
    auto& amps = state.amps;
    switch (pauli) {
        case 'X': detail::apply_x(amps, q); break;
        case 'Y':
            for (size_t base = 0; base < n; base += 2 * stride) {
                for (size_t i = base; i < base + stride; ++i) {
                    const cxd a0 = amps[i], a1 = amps[i + stride];
                    amps[i] = cxd(0, -1) * a1;
                    amps[i + stride] = cxd(0, 1) * a0;
                }
            }
            break;
        case 'Z':
            for (size_t base = stride; base < n; base += 2 * stride) {
                for (size_t i = base; i < base + stride; ++i) amps[i] = -amps[i];
            }
            break;
        default: fail(ErrorKind::UnsupportedGate, "pauli letter");
    }
}

}  // namespace ansatzlab
