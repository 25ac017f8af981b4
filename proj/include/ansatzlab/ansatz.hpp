#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ansatzlab/circuit.hpp"

namespace ansatzlab {

/// Hardware-efficient ansatz families. Suffix L = linear entanglement,
/// A = alternating entanglement; LMod = linear with permuted CX order.
enum class AnsatzFamily {
    RxCxL,
    RxCxLMod,
    RxCxA,
    RxRzCxA,
    RyCxA,
    RxRyCxA,
    RyRzCxA,
};

inline const char* family_name(AnsatzFamily f) {
    switch (f) {
        case AnsatzFamily::RxCxL: return "rx-cx-l";
        case AnsatzFamily::RxCxLMod: return "rx-cx-l-mod";
        case AnsatzFamily::RxCxA: return "rx-cx-a";
        case AnsatzFamily::RxRzCxA: return "rx-rz-cx-a";
        case AnsatzFamily::RyCxA: return "ry-cx-a";
        case AnsatzFamily::RxRyCxA: return "rx-ry-cx-a";
        case AnsatzFamily::RyRzCxA: return "ry-rz-cx-a";
    }
    return "?";
}

inline std::optional<AnsatzFamily> family_from_name(const std::string& s) {
    for (AnsatzFamily f : {AnsatzFamily::RxCxL, AnsatzFamily::RxCxLMod, AnsatzFamily::RxCxA,
                           AnsatzFamily::RxRzCxA, AnsatzFamily::RyCxA, AnsatzFamily::RxRyCxA,
                           AnsatzFamily::RyRzCxA}) {
        if (s == family_name(f)) return f;
    }
    return std::nullopt;
}

struct AnsatzSpec {
    AnsatzFamily family = AnsatzFamily::RxCxL;
    int n_qubits = 2;
    int layers = 1;
    /// RxCxLMod only: explicit within-layer CX orders (one permutation of
    /// 0..n-2 per layer). Empty = derive from perm_seed.
    std::vector<std::vector<int>> cx_orders;
    uint64_t perm_seed = 0;
};

namespace detail {

inline bool family_is_alternating(AnsatzFamily f) {
    return f == AnsatzFamily::RxCxA || f == AnsatzFamily::RxRzCxA || f == AnsatzFamily::RyCxA ||
           f == AnsatzFamily::RxRyCxA || f == AnsatzFamily::RyRzCxA;
}

/// Rotation axes per layer, in on-wire order.
inline std::vector<GateKind> family_axes(AnsatzFamily f) {
    switch (f) {
        case AnsatzFamily::RxCxL:
        case AnsatzFamily::RxCxLMod:
        case AnsatzFamily::RxCxA: return {GateKind::RX};
        case AnsatzFamily::RxRzCxA: return {GateKind::RX, GateKind::RZ};
        case AnsatzFamily::RyCxA: return {GateKind::RY};
        case AnsatzFamily::RxRyCxA: return {GateKind::RX, GateKind::RY};
        case AnsatzFamily::RyRzCxA: return {GateKind::RY, GateKind::RZ};
    }
    return {GateKind::RX};
}

/// CX pairs of alternating layer t: even layers couple (0,1),(2,3),...;
/// odd layers couple (1,2),(3,4),.... Control is always the higher wire,
/// matching the linear chain's CX(i+1 -> i).
inline std::vector<std::pair<int, int>> alternating_pairs(int n, int t) {
    std::vector<std::pair<int, int>> out;
    const int start = (t % 2 == 0) ? 0 : 1;
    for (int q = start; q + 1 < n; q += 2) out.emplace_back(q + 1, q);  // (control, target)
    return out;
}

}  // namespace detail

/// Number of CX gates emitted by a family at (n, layers).
inline int cx_count_formula(AnsatzFamily f, int n, int layers) {
    if (detail::family_is_alternating(f)) {
        return ((layers + 1) / 2) * (n / 2) + (layers / 2) * ((n - 1) / 2);
    }
    return layers * (n - 1);
}

/// Raw parameter count of a family at (n, layers).
inline int param_count_formula(AnsatzFamily f, int n, int layers) {
    const int axes = static_cast<int>(detail::family_axes(f).size());
    return axes * (layers + 1) * n;
}

/// Builds the requested ansatz: (layers+1) rotation layers interleaved with
/// `layers` entanglement layers, trailing rotation layer included.
///
/// Parameter ids are qubit-major inside each rotation layer. Single-axis
/// families use id = q + n*j; two-axis families use id = 2nj + q for the first
/// axis and id = 2nj + n + q for the second, with the first axis preceding the
/// second on every wire.
inline Circuit build_ansatz(const AnsatzSpec& spec) {
    const int n = spec.n_qubits, L = spec.layers;
    if (n < 2) fail(ErrorKind::InvalidSpec, "need n_qubits >= 2");
    if (L < 0) fail(ErrorKind::InvalidSpec, "need layers >= 0");

    const auto axes = detail::family_axes(spec.family);
    const int per_layer = static_cast<int>(axes.size()) * n;

    std::vector<std::vector<int>> orders = spec.cx_orders;
    if (spec.family == AnsatzFamily::RxCxLMod && orders.empty()) {
        std::mt19937_64 rng(spec.perm_seed);
        orders.resize(L);
        for (auto& ord : orders) {
            ord.resize(std::max(0, n - 1));
            std::iota(ord.begin(), ord.end(), 0);
            std::shuffle(ord.begin(), ord.end(), rng);
        }
    }
    if (spec.family == AnsatzFamily::RxCxLMod) {
        if (static_cast<int>(orders.size()) != L) fail(ErrorKind::InvalidSpec, "need one CX order per layer");
        for (const auto& ord : orders) {
            std::vector<bool> seen(n - 1, false);
            if (static_cast<int>(ord.size()) != n - 1) fail(ErrorKind::InvalidSpec, "CX order length");
            for (int v : ord) {
                if (v < 0 || v >= n - 1 || seen[v]) fail(ErrorKind::InvalidSpec, "CX order not a permutation");
                seen[v] = true;
            }
        }
    }

    Circuit c;
    c.n_qubits = n;
    c.raw_param_count = per_layer * (L + 1);
    for (int j = 0; j <= L; ++j) {
        for (size_t axis = 0; axis < axes.size(); ++axis) {
            for (int q = 0; q < n; ++q) {
                const int id = per_layer * j + static_cast<int>(axis) * n + q;
                c.gates.push_back(Gate::rotation(axes[axis], q, ParamExpr::var(id)));
            }
        }
        if (j == L) break;
        if (detail::family_is_alternating(spec.family)) {
            for (auto [ctrl, tgt] : detail::alternating_pairs(n, j)) c.gates.push_back(Gate::cx(ctrl, tgt));
        } else if (spec.family == AnsatzFamily::RxCxLMod) {
            for (int i : orders[j]) c.gates.push_back(Gate::cx(i + 1, i));
        } else {
            for (int i = 0; i < n - 1; ++i) c.gates.push_back(Gate::cx(i + 1, i));
        }
    }
    return c;
}

struct Resources {
    int params = 0;
    int cx = 0;
    int layers = 0;
};

/// Raw parameter count, CX count, and entanglement-layer count (maximal runs
/// of consecutive CX gates).
inline Resources count_resources(const Circuit& c) {
    Resources r;
    r.params = c.raw_param_count;
    bool in_cx_run = false;
    for (const Gate& g : c.gates) {
        if (g.kind == GateKind::CX) {
            ++r.cx;
            if (!in_cx_run) {
                ++r.layers;
                in_cx_run = true;
            }
        } else {
            in_cx_run = false;
        }
    }
    return r;
}

}  // namespace ansatzlab
