#pragma once

#include <map>
#include <span>
#include <vector>

#include "ansatzlab/statevector.hpp"

namespace ansatzlab {

/// Affine angle expression: sum of integer-weighted parameters plus an exact
/// integer multiple of pi/2. Integer arithmetic keeps symbolic rewrites drift-free.
struct ParamExpr {
    std::map<int, int> terms;  // param id -> integer coefficient, no zeros stored
    int const_half_pi = 0;     // k means k*pi/2

    static ParamExpr var(int id) {
        ParamExpr e;
        e.terms[id] = 1;
        return e;
    }

    bool empty() const { return terms.empty() && const_half_pi == 0; }

    void add_term(int id, int coeff) {
        if (coeff == 0) return;
        auto it = terms.find(id);
        if (it == terms.end()) {
            terms[id] = coeff;
        } else {
            it->second += coeff;
            if (it->second == 0) terms.erase(it);
        }
    }

    void add(const ParamExpr& other) {
        for (const auto& [id, c] : other.terms) add_term(id, c);
        const_half_pi += other.const_half_pi;
    }

    void negate() {
        for (auto& [id, c] : terms) c = -c;
        const_half_pi = -const_half_pi;
    }

    double eval(std::span<const double> theta) const {
        double v = const_half_pi * (kPi / 2.0);
        for (const auto& [id, c] : terms) {
            if (id < 0 || size_t(id) >= theta.size()) fail(ErrorKind::ArityMismatch, "parameter id out of range");
            v += c * theta[id];
        }
        return v;
    }

    bool operator==(const ParamExpr& o) const {
        return const_half_pi == o.const_half_pi && terms == o.terms;
    }
};

struct Gate {
    GateKind kind;
    std::vector<int> qubits;  // {q} or {control, target}
    ParamExpr expr;           // rotations only

    static Gate rotation(GateKind k, int q, ParamExpr e) { return {k, {q}, std::move(e)}; }
    static Gate x(int q) { return {GateKind::X, {q}, {}}; }
    static Gate cx(int control, int target) { return {GateKind::CX, {control, target}, {}}; }
};

/// Parameterized circuit: ordered gates over n qubits, with raw parameters
/// referenced through each rotation's ParamExpr.
struct Circuit {
    int n_qubits = 0;
    int raw_param_count = 0;
    std::vector<Gate> gates;

    void validate() const {
        for (const Gate& g : gates) {
            for (int q : g.qubits) {
                if (q < 0 || q >= n_qubits) fail(ErrorKind::IndexOutOfRange, "gate qubit index");
            }
            if (g.kind == GateKind::CX && (g.qubits.size() != 2 || g.qubits[0] == g.qubits[1]))
                fail(ErrorKind::IndexOutOfRange, "CX qubits");
            if (is_rotation(g.kind)) {
                for (const auto& [id, c] : g.expr.terms) {
                    (void)c;
                    if (id < 0 || id >= raw_param_count) fail(ErrorKind::ArityMismatch, "expr references unknown parameter");
                }
            } else if (!g.expr.empty()) {
                fail(ErrorKind::UnsupportedGate, "non-rotation gate with parameter expression");
            }
        }
    }
};

struct BoundGate {
    GateKind kind;
    std::vector<int> qubits;
    double angle = 0.0;
};

/// Evaluates every gate's expression at a concrete parameter vector.
inline std::vector<BoundGate> bind(const Circuit& c, std::span<const double> theta) {
    if (theta.size() != size_t(c.raw_param_count)) fail(ErrorKind::ArityMismatch, "binding length");
    std::vector<BoundGate> out;
    out.reserve(c.gates.size());
    for (const Gate& g : c.gates) {
        out.push_back({g.kind, g.qubits, is_rotation(g.kind) ? g.expr.eval(theta) : 0.0});
    }
    return out;
}

inline void apply_bound_inplace(Statevector& s, const std::vector<BoundGate>& gates) {
    for (const BoundGate& g : gates) apply_gate_inplace(s, g.kind, g.qubits, g.angle);
}

/// Runs the circuit on |0...0> at the given binding.
inline Statevector run_circuit(const Circuit& c, std::span<const double> theta) {
    Statevector s(c.n_qubits);
    apply_bound_inplace(s, bind(c, theta));
    return s;
}

/// Full unitary of the bound circuit, built column by column: column x is the
/// circuit applied to basis state |x>.
inline CMatrix circuit_unitary(const Circuit& c, std::span<const double> theta) {
    const auto gates = bind(c, theta);
    const int d = 1 << c.n_qubits;
    CMatrix u(d);
    for (int col = 0; col < d; ++col) {
        Statevector s = Statevector::basis(c.n_qubits, col);
        apply_bound_inplace(s, gates);
        for (int row = 0; row < d; ++row) u.at(row, col) = s.amps[row];
    }
    return u;
}

}  // namespace ansatzlab
