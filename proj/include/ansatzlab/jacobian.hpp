#pragma once

#include <random>
#include <string>

#include "ansatzlab/circuit.hpp"
#include "ansatzlab/svd.hpp"

namespace ansatzlab {

enum class JacobianMode { Unitary, State };

namespace detail {

inline char rotation_pauli(GateKind k) {
    switch (k) {
        case GateKind::RX: return 'X';
        case GateKind::RY: return 'Y';
        case GateKind::RZ: return 'Z';
        default: fail(ErrorKind::UnsupportedGate, "rotation_pauli");
    }
}

/// d/dtheta_k of the circuit applied to |start>, by forward dual propagation:
/// a rotation R_P(phi) with phi carrying coefficient c on theta_k contributes
/// the generator (-i c / 2) P inserted at the gate's position.
inline Statevector column_derivative(const Circuit& c, const std::vector<BoundGate>& bound, int param,
                                     uint64_t start) {
    Statevector s = Statevector::basis(c.n_qubits, start);
    Statevector ds = Statevector::basis(c.n_qubits, start);
    std::fill(ds.amps.begin(), ds.amps.end(), cxd(0, 0));
    for (size_t gi = 0; gi < c.gates.size(); ++gi) {
        const Gate& g = c.gates[gi];
        const BoundGate& bg = bound[gi];
        int coeff = 0;
        if (is_rotation(g.kind)) {
            auto it = g.expr.terms.find(param);
            if (it != g.expr.terms.end()) coeff = it->second;
        }
        if (coeff != 0) {
            Statevector gen = s;
            apply_pauli_inplace(gen, rotation_pauli(g.kind), g.qubits[0]);
            const cxd w = cxd(0, -0.5 * coeff);
            for (size_t i = 0; i < ds.amps.size(); ++i) ds.amps[i] += w * gen.amps[i];
        }
        apply_gate_inplace(s, bg.kind, bg.qubits, bg.angle);
        apply_gate_inplace(ds, bg.kind, bg.qubits, bg.angle);
    }
    return ds;
}

}  // namespace detail

/// Jacobian of vec(U) (real and imaginary parts stacked) with respect to the
/// raw parameters, evaluated at theta. Rows = 2*4^n, columns = parameters.
inline RMatrix unitary_jacobian(const Circuit& c, std::span<const double> theta) {
    const auto bound = bind(c, theta);
    const int d = 1 << c.n_qubits;
    const int P = c.raw_param_count;
    RMatrix j(2 * d * d, P);
    for (int k = 0; k < P; ++k) {
        for (int col = 0; col < d; ++col) {
            Statevector ds = detail::column_derivative(c, bound, k, col);
            for (int row = 0; row < d; ++row) {
                const cxd v = ds.amps[row];
                j.at(2 * (col * d + row), k) = v.real();
                j.at(2 * (col * d + row) + 1, k) = v.imag();
            }
        }
    }
    return j;
}

/// Jacobian of the output state U(theta)|0>, rows = 2*2^n. If project_phase,
/// the component of each column along i|psi> (the global-phase direction) is
/// removed before returning.
inline RMatrix state_jacobian(const Circuit& c, std::span<const double> theta, bool project_phase = true) {
    const auto bound = bind(c, theta);
    const int d = 1 << c.n_qubits;
    const int P = c.raw_param_count;

    Statevector psi(c.n_qubits);
    apply_bound_inplace(psi, bound);

    RMatrix j(2 * d, P);
    for (int k = 0; k < P; ++k) {
        Statevector ds = detail::column_derivative(c, bound, k, 0);
        if (project_phase) {
            // subtract <i psi, ds> * i psi in the real stacked inner product
            cxd overlap(0, 0);
            for (int i = 0; i < d; ++i) overlap += std::conj(cxd(0, 1) * psi.amps[i]) * ds.amps[i];
            const double comp = overlap.real();
            for (int i = 0; i < d; ++i) ds.amps[i] -= comp * cxd(0, 1) * psi.amps[i];
        }
        for (int i = 0; i < d; ++i) {
            j.at(2 * i, k) = ds.amps[i].real();
            j.at(2 * i + 1, k) = ds.amps[i].imag();
        }
    }
    return j;
}

struct RankReport {
    JacobianMode mode = JacobianMode::Unitary;
    int rank = 0;  // max over seeds
    std::vector<int> ranks_per_seed;
    std::vector<uint64_t> seeds;
    double rel_tol = 1e-8;
    std::vector<double> singular_values;  // from the best seed
    bool subsampled = false;
    bool seeds_disagree = false;
};

/// Numerical tangent-space rank at `seed_count` independent uniform points of
/// [0, 2pi)^P. Reports the max across seeds; disagreement between seeds is
/// flagged (random points dodge the measure-zero degenerate bindings).
///
/// For P > 200 or n > 8 in unitary mode the Jacobian is row-subsampled to 4P
/// random rows before the SVD; rank <= P makes this lossless in practice.
inline RankReport expressive_rank(const Circuit& c, JacobianMode mode, int seed_count,
                                  double rel_tol = 1e-8, uint64_t base_seed = 12345) {
    if (seed_count < 1) fail(ErrorKind::InvalidSpec, "need seeds >= 1");
    RankReport rep;
    rep.mode = mode;
    rep.rel_tol = rel_tol;
    const int P = c.raw_param_count;
    if (P == 0) return rep;

    for (int s = 0; s < seed_count; ++s) {
        const uint64_t seed = base_seed + 7919 * static_cast<uint64_t>(s);
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
        std::vector<double> theta(P);
        for (double& t : theta) t = uni(rng);

        RMatrix j = (mode == JacobianMode::Unitary) ? unitary_jacobian(c, theta)
                                                    : state_jacobian(c, theta);
        if (mode == JacobianMode::Unitary && (P > 200 || c.n_qubits > 8) && j.rows > 4 * P) {
            RMatrix sub(4 * P, P);
            std::uniform_int_distribution<int> pick(0, j.rows - 1);
            for (int r = 0; r < sub.rows; ++r) {
                const int src = pick(rng);
                for (int k = 0; k < P; ++k) sub.at(r, k) = j.at(src, k);
            }
            j = std::move(sub);
            rep.subsampled = true;
        }

        const auto sv = singular_values(j);
        int rank = 0;
        if (!sv.empty() && sv[0] > 0.0) {
            const double cut = rel_tol * sv[0];
            while (rank < static_cast<int>(sv.size()) && sv[rank] > cut) ++rank;
        }
        rep.ranks_per_seed.push_back(rank);
        rep.seeds.push_back(seed);
        if (rank > rep.rank) {
            rep.rank = rank;
            rep.singular_values = sv;
        }
    }
    for (int r : rep.ranks_per_seed)
        if (r != rep.rank) rep.seeds_disagree = true;
    return rep;
}

}  // namespace ansatzlab
