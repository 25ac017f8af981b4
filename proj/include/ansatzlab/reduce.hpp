#pragma once

#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "ansatzlab/ansatz.hpp"

namespace ansatzlab {

/// One effective parameter: the raw parameters it absorbs, with signs, plus an
/// exact pi/2-integer offset.
struct CombinationClass {
    std::vector<std::pair<int, int>> members;  // (param id, sign +1/-1)
    int const_half_pi = 0;
};

struct CombinationMap {
    std::vector<CombinationClass> classes;
    /// Euler-merged runs: indices into ReductionReport::reduced.gates. Each run
    /// of m >= 4 rotations counts as 3 effective parameters instead of m.
    std::vector<std::vector<int>> euler_runs;
    /// Raw ids never referenced by any gate (not counted as effective).
    std::vector<int> unused_params;
};

struct RuleFire {
    std::string rule;
    std::string location;
};

struct ReductionReport {
    Resources input;
    int effective_count = 0;
    Circuit reduced;  // same raw ids as the input; bind-compatible
    CombinationMap map;
    std::vector<RuleFire> rules_fired;
};

/// floor((3n^2+1)/4): cap on effective parameters of any-depth RX-CX ansatz
/// with (modified) linear entanglement.
inline int effective_upper_bound_rxcx(int n) {
    if (n < 1) fail(ErrorKind::InvalidSpec, "need n >= 1");
    return (3 * n * n + 1) / 4;
}

/// Closed-form effective-parameter counts for the alternating two-axis
/// families, stated for a 2L-layer circuit. These are the lower bounds the
/// combination argument certifies, not necessarily the numeric tangent rank.
inline int effective_count_formula(AnsatzFamily family, int n, int L) {
    switch (family) {
        case AnsatzFamily::RxRzCxA:
        case AnsatzFamily::RxRyCxA:
        case AnsatzFamily::RyRzCxA: return (4 * n - 3) * L;
        case AnsatzFamily::RyCxA: return (n - 1) * 2 * L;
        default: fail(ErrorKind::UnsupportedFamily, family_name(family));
    }
}

// -- layer-structure recognition ---------------------------------------------

namespace detail {

/// Layered view of a single-axis rotation + CX circuit:
/// rot_gate[j][q] = gate index of the layer-j rotation on wire q.
struct LayerView {
    int n = 0;
    GateKind axis = GateKind::RX;
    std::vector<std::vector<int>> rot_gate;            // [layer][qubit] -> gate index
    std::vector<std::vector<int>> cx_blocks;           // [layer] -> gate indices
};

inline std::optional<LayerView> parse_single_axis_layers(const Circuit& c) {
    LayerView v;
    v.n = c.n_qubits;
    bool axis_set = false;
    std::vector<int> current_rot;  // gate indices of the rotation block being read
    std::vector<int> current_cx;
    bool reading_rot = true;

    auto flush_rot = [&]() -> bool {
        if (static_cast<int>(current_rot.size()) != v.n) return false;
        std::vector<int> per_qubit(v.n, -1);
        for (int gi : current_rot) {
            const int q = c.gates[gi].qubits[0];
            if (per_qubit[q] != -1) return false;
            per_qubit[q] = gi;
        }
        v.rot_gate.push_back(std::move(per_qubit));
        current_rot.clear();
        return true;
    };

    for (int gi = 0; gi < static_cast<int>(c.gates.size()); ++gi) {
        const Gate& g = c.gates[gi];
        if (is_rotation(g.kind)) {
            if (!axis_set) {
                v.axis = g.kind;
                axis_set = true;
            }
            if (g.kind != v.axis) return std::nullopt;
            if (!reading_rot) {
                v.cx_blocks.push_back(std::move(current_cx));
                current_cx.clear();
                reading_rot = true;
            }
            current_rot.push_back(gi);
        } else if (g.kind == GateKind::CX) {
            if (reading_rot) {
                if (!flush_rot()) return std::nullopt;
                reading_rot = false;
            }
            current_cx.push_back(gi);
        } else {
            return std::nullopt;  // X gates etc: not a pristine layered family
        }
    }
    if (!reading_rot) return std::nullopt;  // must end with a rotation layer
    if (!flush_rot()) return std::nullopt;
    if (v.rot_gate.size() != v.cx_blocks.size() + 1) return std::nullopt;
    return v;
}

inline std::vector<std::pair<int, int>> block_pairs(const Circuit& c, const std::vector<int>& block) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(block.size());
    for (int gi : block) pairs.emplace_back(c.gates[gi].qubits[0], c.gates[gi].qubits[1]);
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

/// True when every CX block is the full chain CX(i+1 -> i), in any order.
inline bool is_linear_family(const Circuit& c, const LayerView& v) {
    if (v.axis != GateKind::RX) return false;
    std::vector<std::pair<int, int>> chain;
    for (int i = 0; i < v.n - 1; ++i) chain.emplace_back(i + 1, i);
    std::sort(chain.begin(), chain.end());
    for (const auto& block : v.cx_blocks) {
        if (block_pairs(c, block) != chain) return false;
    }
    return true;
}

/// True when CX blocks alternate even pairs (0,1),(2,3),... and odd pairs
/// (1,2),(3,4),... starting even, controls on the higher wire.
inline bool is_alternating_family(const Circuit& c, const LayerView& v) {
    if (v.axis != GateKind::RX) return false;
    for (size_t t = 0; t < v.cx_blocks.size(); ++t) {
        auto expect = alternating_pairs(v.n, static_cast<int>(t));
        std::sort(expect.begin(), expect.end());
        if (block_pairs(c, v.cx_blocks[t]) != expect) return false;
    }
    return true;
}

}  // namespace detail

// -- alternating -> linear reduction ------------------------------------------

/// Affine reparameterization produced by a reduction: theta_out[k] =
/// sum signs * theta_in[id] + const_half_pi * pi/2.
struct AffineParamMap {
    int in_params = 0;
    int out_params = 0;
    std::vector<CombinationClass> out_exprs;

    std::vector<double> apply(std::span<const double> theta_in) const {
        if (theta_in.size() != size_t(in_params)) fail(ErrorKind::ArityMismatch, "param map input");
        std::vector<double> out(out_params, 0.0);
        for (int k = 0; k < out_params; ++k) {
            double v = out_exprs[k].const_half_pi * (kPi / 2.0);
            for (auto [id, sign] : out_exprs[k].members) v += sign * theta_in[id];
            out[k] = v;
        }
        return out;
    }
};

namespace detail {

/// Core of the alternating->linear rewrite. Every rotation layer sitting
/// between an even and an odd entanglement layer is absorbed into a
/// neighbouring layer: backward through the preceding CX when the wire is its
/// target (RX commutes across the target), backward across an idle wire, or
/// forward otherwise. Consecutive even/odd CX blocks then concatenate into one
/// full-chain layer. Exprs are accumulated, so the result stays bind-compatible
/// with the original raw parameters.
inline Circuit absorb_alternating(const Circuit& c, const LayerView& v,
                                  std::vector<RuleFire>* log) {
    const int n = v.n;
    const int blocks = static_cast<int>(v.cx_blocks.size());

    enum class Role { Target, Control, Idle };
    auto role_in_block = [&](int t, int q) {
        for (auto [ctrl, tgt] : alternating_pairs(n, t)) {
            if (q == tgt) return Role::Target;
            if (q == ctrl) return Role::Control;
        }
        return Role::Idle;
    };

    std::vector<Gate> gates = c.gates;
    std::vector<bool> alive(gates.size(), true);

    for (int r = 1; r < static_cast<int>(v.rot_gate.size()); r += 2) {
        if (r + 1 >= static_cast<int>(v.rot_gate.size())) break;  // odd total blocks: keep tail
        for (int q = 0; q < n; ++q) {
            const int gi = v.rot_gate[r][q];
            const Role before = role_in_block(r - 1, q);
            int dst;
            if (before == Role::Target || before == Role::Idle) {
                dst = v.rot_gate[r - 1][q];
            } else {
                dst = v.rot_gate[r + 1][q];
            }
            gates[dst].expr.add(gates[gi].expr);
            alive[gi] = false;
            if (log)
                log->push_back({"A2L-absorb", "wire " + std::to_string(q) + " layer " + std::to_string(r) +
                                                  (before != Role::Control ? " -> back" : " -> fwd")});
        }
    }

    Circuit out;
    out.n_qubits = n;
    out.raw_param_count = c.raw_param_count;
    // rebuild in layer order: even rotation layers, with CX block pairs fused
    for (int r = 0; r < static_cast<int>(v.rot_gate.size()); r += 2) {
        for (int q = 0; q < n; ++q) {
            const int gi = v.rot_gate[r][q];
            if (alive[gi]) out.gates.push_back(gates[gi]);
        }
        for (int b : {r, r + 1}) {
            if (b < blocks) {
                for (int gi : v.cx_blocks[b]) out.gates.push_back(gates[gi]);
            }
        }
    }
    return out;
}

}  // namespace detail

/// Rewrites a (2L)-layer alternating RX-CX circuit into an L-layer linear one
/// (chain CX order: even pairs then odd pairs inside each fused layer) plus the
/// affine map m with circuit_unitary(out, m(theta)) == circuit_unitary(in, theta)
/// exactly, no phase quotient.
inline std::pair<Circuit, AffineParamMap> reduce_alternating_to_linear(const Circuit& c) {
    auto view = detail::parse_single_axis_layers(c);
    if (!view || !detail::is_alternating_family(c, *view))
        fail(ErrorKind::NotAlternatingRxCx, "input is not an alternating RX-CX circuit");
    if (view->cx_blocks.size() % 2 != 0)
        fail(ErrorKind::NotAlternatingRxCx, "need an even entanglement-layer count");

    Circuit absorbed = detail::absorb_alternating(c, *view, nullptr);

    // re-index surviving rotations with fresh ids, recording the map
    Circuit out;
    out.n_qubits = absorbed.n_qubits;
    AffineParamMap map;
    map.in_params = c.raw_param_count;
    for (Gate g : absorbed.gates) {
        if (is_rotation(g.kind)) {
            CombinationClass cls;
            for (const auto& [id, coeff] : g.expr.terms) cls.members.emplace_back(id, coeff >= 0 ? 1 : -1);
            cls.const_half_pi = g.expr.const_half_pi;
            const int fresh = map.out_params++;
            map.out_exprs.push_back(std::move(cls));
            g.expr = ParamExpr::var(fresh);
        }
        out.gates.push_back(std::move(g));
    }
    out.raw_param_count = map.out_params;
    return {std::move(out), std::move(map)};
}

// -- the rule engine -----------------------------------------------------------

namespace detail {

struct Engine {
    Circuit c;  // mutated in place; dead gates flagged
    std::vector<bool> alive;
    std::vector<RuleFire> log;

    explicit Engine(Circuit in) : c(std::move(in)), alive(c.gates.size(), true) {}

    std::vector<int> wire_sequence(int q) const {
        std::vector<int> seq;
        for (int gi = 0; gi < static_cast<int>(c.gates.size()); ++gi) {
            if (!alive[gi]) continue;
            for (int gq : c.gates[gi].qubits)
                if (gq == q) {
                    seq.push_back(gi);
                    break;
                }
        }
        return seq;
    }

    void merge(int src, int dst, const char* rule, int wire) {
        c.gates[dst].expr.add(c.gates[src].expr);
        alive[src] = false;
        log.push_back({rule, "wire " + std::to_string(wire) + " gate " + std::to_string(src) +
                                 " -> " + std::to_string(dst)});
    }

    /// R1: adjacent same-axis rotations on one wire.
    bool pass_r1() {
        bool fired = false;
        for (int q = 0; q < c.n_qubits; ++q) {
            auto seq = wire_sequence(q);
            for (size_t i = 0; i + 1 < seq.size(); ++i) {
                const Gate& a = c.gates[seq[i]];
                const Gate& b = c.gates[seq[i + 1]];
                if (is_rotation(a.kind) && a.kind == b.kind && a.qubits[0] == q && b.qubits[0] == q) {
                    merge(seq[i], seq[i + 1], "R1-same-axis", q);
                    fired = true;
                    seq = wire_sequence(q);
                    --i;
                }
            }
        }
        return fired;
    }

    /// R2 (X-rule): an RX slides across any run of CX gates targeting its wire
    /// and merges with the next RX there.
    bool pass_r2() {
        bool fired = false;
        for (int q = 0; q < c.n_qubits; ++q) {
            auto seq = wire_sequence(q);
            for (size_t i = 0; i + 1 < seq.size(); ++i) {
                if (c.gates[seq[i]].kind != GateKind::RX || c.gates[seq[i]].qubits[0] != q) continue;
                size_t j = i + 1;
                while (j < seq.size() && c.gates[seq[j]].kind == GateKind::CX &&
                       c.gates[seq[j]].qubits[1] == q)
                    ++j;
                if (j > i + 1 && j < seq.size() && c.gates[seq[j]].kind == GateKind::RX &&
                    c.gates[seq[j]].qubits[0] == q) {
                    merge(seq[i], seq[j], "R2-x-rule", q);
                    fired = true;
                    seq = wire_sequence(q);
                    --i;
                }
            }
        }
        return fired;
    }

    /// R3: periodic combination for recognized RX-CX (modified-)linear layers.
    /// On wire i, layer j folds into layer j - 2^ceil(log2(i+1)).
    void apply_periodic(const LayerView& v) {
        const int layers = static_cast<int>(v.rot_gate.size());
        for (int q = 0; q < v.n; ++q) {
            int period = 1;
            while (period < q + 1) period *= 2;
            for (int j = layers - 1; j >= period; --j) {
                merge(v.rot_gate[j][q], v.rot_gate[j - period][q], "R3-periodic", q);
            }
        }
    }

    /// R4: runs of >= 4 surviving rotations with no two-qubit gate between
    /// collapse to three effective angles (ZXZ). Recorded, not rewritten.
    std::vector<std::vector<int>> find_euler_runs() const {
        std::vector<std::vector<int>> runs;
        for (int q = 0; q < c.n_qubits; ++q) {
            std::vector<int> run;
            auto flush = [&]() {
                if (run.size() >= 4) runs.push_back(run);
                run.clear();
            };
            for (int gi : wire_sequence(q)) {
                if (is_rotation(c.gates[gi].kind) && c.gates[gi].qubits[0] == q)
                    run.push_back(gi);
                else
                    flush();
            }
            flush();
        }
        return runs;
    }
};

}  // namespace detail

/// Runs the rewrite rules to fixpoint and reports surviving effective
/// parameters. Rule set, in priority order within a recognized family:
///   R3/A2L  periodic combination on (modified-)linear RX-CX layers, with
///           alternating circuits first rewritten to linear form;
///   R1      adjacent same-axis merge on a wire;
///   R2      X-rule merge across CX targets;
///   R4      idle-wire Euler (ZXZ) merge of runs >= 4.
/// The reduced circuit keeps the original parameter ids: binding it at any
/// theta reproduces the input circuit's unitary exactly.
inline ReductionReport combine_parameters(const Circuit& c) {
    c.validate();
    for (const Gate& g : c.gates) {
        if (!is_rotation(g.kind) && g.kind != GateKind::X && g.kind != GateKind::CX)
            fail(ErrorKind::UnsupportedGate, "combine_parameters gate set");
    }

    ReductionReport rep;
    rep.input = count_resources(c);

    // Pauli frame: push X gates to the tail. Through a rotation the frame
    // negates RY/RZ angles (X RY(t) X = RY(-t), X RZ(t) X = RZ(-t)); through a
    // CX a control-side X spawns a target-side X.
    Circuit work;
    work.n_qubits = c.n_qubits;
    work.raw_param_count = c.raw_param_count;
    {
        std::vector<int> frame(c.n_qubits, 0);
        for (const Gate& g : c.gates) {
            if (g.kind == GateKind::X) {
                frame[g.qubits[0]] ^= 1;
                continue;
            }
            Gate h = g;
            if (is_rotation(g.kind) && frame[g.qubits[0]] && g.kind != GateKind::RX) h.expr.negate();
            if (g.kind == GateKind::CX && frame[g.qubits[0]]) frame[g.qubits[1]] ^= 1;
            work.gates.push_back(std::move(h));
        }
        for (int q = 0; q < c.n_qubits; ++q)
            if (frame[q]) work.gates.push_back(Gate::x(q));
    }

    detail::Engine eng(std::move(work));

    // recognized RX-CX families get the periodic rule
    if (auto view = detail::parse_single_axis_layers(eng.c)) {
        if (detail::is_alternating_family(eng.c, *view) && view->cx_blocks.size() % 2 == 0 &&
            !view->cx_blocks.empty()) {
            Circuit lin = detail::absorb_alternating(eng.c, *view, &eng.log);
            eng = detail::Engine(std::move(lin));
            eng.log.push_back({"A2L-absorb", "alternating layers fused to linear"});
            view = detail::parse_single_axis_layers(eng.c);
        }
        if (view && detail::is_linear_family(eng.c, *view)) eng.apply_periodic(*view);
    }

    // general fixpoint
    for (;;) {
        if (eng.pass_r1()) continue;
        if (eng.pass_r2()) continue;
        break;
    }

    // assemble the reduced circuit
    std::vector<int> new_index(eng.c.gates.size(), -1);
    rep.reduced.n_qubits = eng.c.n_qubits;
    rep.reduced.raw_param_count = eng.c.raw_param_count;
    for (int gi = 0; gi < static_cast<int>(eng.c.gates.size()); ++gi) {
        if (!eng.alive[gi]) continue;
        new_index[gi] = static_cast<int>(rep.reduced.gates.size());
        rep.reduced.gates.push_back(eng.c.gates[gi]);
    }

    std::vector<bool> used(size_t(c.raw_param_count), false);
    for (const Gate& g : rep.reduced.gates) {
        if (!is_rotation(g.kind)) continue;
        CombinationClass cls;
        for (const auto& [id, coeff] : g.expr.terms) {
            cls.members.emplace_back(id, coeff >= 0 ? 1 : -1);
            used[id] = true;
        }
        cls.const_half_pi = g.expr.const_half_pi;
        if (!cls.members.empty()) rep.map.classes.push_back(std::move(cls));
    }
    for (int id = 0; id < c.raw_param_count; ++id)
        if (!used[id]) rep.map.unused_params.push_back(id);

    rep.effective_count = static_cast<int>(rep.map.classes.size());
    for (auto& run_old : eng.find_euler_runs()) {
        std::vector<int> run;
        int with_params = 0;
        for (int gi : run_old) {
            run.push_back(new_index[gi]);
            if (!eng.c.gates[gi].expr.terms.empty()) ++with_params;
        }
        if (with_params > 3) {
            rep.effective_count -= with_params - 3;
            eng.log.push_back({"R4-euler", "run of " + std::to_string(run.size()) + " rotations"});
        }
        rep.map.euler_runs.push_back(std::move(run));
    }

    rep.rules_fired = std::move(eng.log);
    return rep;
}

// -- certificates ----------------------------------------------------------------

struct CertificateResult {
    bool ok = true;
    double worst = 0.0;
    std::string detail;
};

/// The operational meaning of "these parameters combine": shifting one member
/// by +s_a*delta and another by -s_b*delta leaves the full unitary unchanged.
inline CertificateResult check_shift_certificate(const Circuit& c, const CombinationClass& cls,
                                                 int trials = 20, double tol = 1e-9,
                                                 uint64_t seed = 99) {
    CertificateResult res;
    if (cls.members.size() < 2) return res;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
    for (size_t m = 1; m < cls.members.size(); ++m) {
        const auto [a, sa] = cls.members[0];
        const auto [b, sb] = cls.members[m];
        for (int t = 0; t < trials; ++t) {
            std::vector<double> theta(c.raw_param_count);
            for (double& x : theta) x = uni(rng);
            const double delta = uni(rng) - kPi;
            const CMatrix u0 = circuit_unitary(c, theta);
            theta[a] += sa * delta;
            theta[b] -= sb * delta;
            const double d = frobenius_distance(u0, circuit_unitary(c, theta));
            res.worst = std::max(res.worst, d);
            if (d > tol) {
                res.ok = false;
                res.detail = "pair (" + std::to_string(a) + "," + std::to_string(b) + ") distance " +
                             std::to_string(d);
                return res;
            }
        }
    }
    return res;
}

/// Certifies an Euler run: the bound 2x2 product must reconstruct from its
/// ZXZ angles within tol.
inline CertificateResult check_euler_run(const Circuit& reduced, const std::vector<int>& run,
                                         int trials = 10, double tol = 1e-9, uint64_t seed = 99) {
    CertificateResult res;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
    for (int t = 0; t < trials; ++t) {
        std::vector<double> theta(reduced.raw_param_count);
        for (double& x : theta) x = uni(rng);
        Mat2 u{1, 0, 0, 1};
        for (int gi : run) {
            const Gate& g = reduced.gates[gi];
            const double ang = g.expr.eval(theta);
            Mat2 m = g.kind == GateKind::RX ? rx_mat(ang) : (g.kind == GateKind::RY ? ry_mat(ang) : rz_mat(ang));
            u = mul2(m, u);
        }
        const double d = mat2_distance(u, euler_zxz_reconstruct(euler_zxz(u)));
        res.worst = std::max(res.worst, d);
        if (d > tol) {
            res.ok = false;
            res.detail = "euler reconstruction distance " + std::to_string(d);
            return res;
        }
    }
    return res;
}

/// Full report check: every class passes the shift certificate, every Euler
/// run reconstructs, and the reduced circuit reproduces the original unitary
/// on random bindings.
inline CertificateResult check_reduction(const Circuit& original, const ReductionReport& rep,
                                         int trials = 20, double tol = 1e-9, uint64_t seed = 99) {
    CertificateResult res;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
    for (size_t k = 0; k < rep.map.classes.size(); ++k) {
        auto r = check_shift_certificate(original, rep.map.classes[k], trials, tol, seed + k);
        res.worst = std::max(res.worst, r.worst);
        if (!r.ok) {
            r.detail = "class " + std::to_string(k) + ": " + r.detail;
            return r;
        }
    }
    for (const auto& run : rep.map.euler_runs) {
        auto r = check_euler_run(rep.reduced, run, 10, tol, seed);
        res.worst = std::max(res.worst, r.worst);
        if (!r.ok) return r;
    }
    for (int t = 0; t < trials; ++t) {
        std::vector<double> theta(original.raw_param_count);
        for (double& x : theta) x = uni(rng);
        const double d = frobenius_distance(circuit_unitary(original, theta),
                                            circuit_unitary(rep.reduced, theta));
        res.worst = std::max(res.worst, d);
        if (d > tol) {
            res.ok = false;
            res.detail = "reduced circuit deviates by " + std::to_string(d);
            return res;
        }
    }
    return res;
}

}  // namespace ansatzlab
