#pragma once

#include <bit>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "ansatzlab/eig.hpp"
#include "ansatzlab/statevector.hpp"

namespace ansatzlab {

/// Tensor product of Pauli letters; letters[q] acts on qubit q.
struct PauliString {
    std::string letters;  // over {I, X, Y, Z}

    int arity() const { return static_cast<int>(letters.size()); }

    uint64_t x_mask() const {
        uint64_t m = 0;
        for (size_t q = 0; q < letters.size(); ++q)
            if (letters[q] == 'X' || letters[q] == 'Y') m |= uint64_t(1) << q;
        return m;
    }
    uint64_t z_mask() const {
        uint64_t m = 0;
        for (size_t q = 0; q < letters.size(); ++q)
            if (letters[q] == 'Z' || letters[q] == 'Y') m |= uint64_t(1) << q;
        return m;
    }
    int y_count() const {
        int c = 0;
        for (char l : letters) c += (l == 'Y');
        return c;
    }
    bool diagonal() const {
        for (char l : letters)
            if (l == 'X' || l == 'Y') return false;
        return true;
    }
};

/// Real-weighted Pauli sum plus a constant offset; Hermitian by construction.
struct Observable {
    int n = 0;
    std::vector<std::pair<double, PauliString>> terms;
    double offset = 0.0;

    bool diagonal() const {
        for (const auto& [c, p] : terms) {
            (void)c;
            if (!p.diagonal()) return false;
        }
        return true;
    }
};

namespace detail {

inline cxd y_phase(int y_count) {
    switch (y_count & 3) {  // i^y
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

}  // namespace detail

/// |out> = P |in> for one Pauli string.
inline Statevector apply_pauli_string(const Statevector& in, const PauliString& p) {
    if (p.arity() != in.n_qubits) fail(ErrorKind::ArityMismatch, "pauli arity");
    const uint64_t xm = p.x_mask(), zm = p.z_mask();
    const cxd yp = detail::y_phase(p.y_count());
    Statevector out(in.n_qubits);
    out.amps[0] = 0.0;
    for (uint64_t x = 0; x < in.amps.size(); ++x) {
        const double sign = (std::popcount(x & zm) & 1) ? -1.0 : 1.0;
        out.amps[x ^ xm] = yp * sign * in.amps[x];
    }
    return out;
}

/// <psi|O|psi>. The imaginary residue must stay below 1e-10 and is dropped.
inline double expectation(const Statevector& psi, const Observable& obs) {
    if (obs.n != psi.n_qubits) fail(ErrorKind::ArityMismatch, "expectation arity");
    cxd acc(0, 0);
    for (const auto& [coeff, p] : obs.terms) {
        const Statevector phi = apply_pauli_string(psi, p);
        cxd dot(0, 0);
        for (size_t i = 0; i < psi.amps.size(); ++i) dot += std::conj(psi.amps[i]) * phi.amps[i];
        acc += coeff * dot;
    }
    if (std::abs(acc.imag()) > 1e-10) fail(ErrorKind::NotUnitary, "expectation has imaginary residue");
    return acc.real() + obs.offset;
}

/// Dense Hermitian matrix of the observable (small n only).
inline CMatrix observable_matrix(const Observable& obs) {
    const int d = 1 << obs.n;
    CMatrix h(d);
    for (const auto& [coeff, p] : obs.terms) {
        const uint64_t xm = p.x_mask(), zm = p.z_mask();
        const cxd yp = detail::y_phase(p.y_count());
        for (uint64_t x = 0; x < uint64_t(d); ++x) {
            const double sign = (std::popcount(x & zm) & 1) ? -1.0 : 1.0;
            h.at(x ^ xm, x) += coeff * yp * sign;
        }
    }
    for (int i = 0; i < d; ++i) h.at(i, i) += obs.offset;
    return h;
}

/// Energy of a computational basis state under a diagonal (I/Z) observable.
inline double diagonal_energy(const Observable& obs, uint64_t bits) {
    double e = obs.offset;
    for (const auto& [coeff, p] : obs.terms) {
        e += (std::popcount(bits & p.z_mask()) & 1) ? -coeff : coeff;
    }
    return e;
}

struct ExactMinimum {
    double energy = 0.0;
    std::optional<uint64_t> bitstring;       // diagonal path
    std::optional<std::vector<cxd>> eigvec;  // dense path
};

/// Exact minimum of the observable: a bitstring scan for diagonal operators
/// (n <= 20), the dense eigensolver otherwise (n <= 10).
inline ExactMinimum exact_minimum(const Observable& obs) {
    ExactMinimum out;
    if (obs.diagonal()) {
        if (obs.n > 20) fail(ErrorKind::DimensionTooLarge, "diagonal scan supports n <= 20");
        uint64_t best = 0;
        double bestE = diagonal_energy(obs, 0);
        for (uint64_t b = 1; b < (uint64_t(1) << obs.n); ++b) {
            const double e = diagonal_energy(obs, b);
            if (e < bestE) {
                bestE = e;
                best = b;
            }
        }
        out.energy = bestE;
        out.bitstring = best;
        return out;
    }
    if (obs.n > 10) fail(ErrorKind::DimensionTooLarge, "dense path supports n <= 10");
    const HermEig eig = eigensolve(observable_matrix(obs));
    out.energy = eig.values[0];
    std::vector<cxd> v(eig.vectors.dim);
    for (int i = 0; i < eig.vectors.dim; ++i) v[i] = eig.vectors.at(i, 0);
    out.eigvec = std::move(v);
    return out;
}

// -- Pauli-sum text format ------------------------------------------------------
//
// One term per line: "<coeff> <letters>", letters over {I,X,Y,Z} with
// letters[0] acting on qubit 0. '#' starts a comment, blank lines are skipped,
// and an optional "offset <value>" line sets the constant.

inline Observable parse_observable(std::istream& in) {
    Observable obs;
    std::string line;
    int lineno = 0;
    bool arity_known = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first)) continue;
        if (first == "offset") {
            double v;
            if (!(ss >> v))
                fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": offset needs a value");
            obs.offset += v;
            continue;
        }
        double coeff;
        try {
            size_t used = 0;
            coeff = std::stod(first, &used);
            if (used != first.size()) throw std::invalid_argument("trailing");
        } catch (...) {
            fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": bad coefficient \"" + first + "\"");
        }
        std::string letters;
        if (!(ss >> letters))
            fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": missing pauli string");
        for (char& ch : letters) {
            ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
            if (ch != 'I' && ch != 'X' && ch != 'Y' && ch != 'Z')
                fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": bad pauli letter");
        }
        if (!arity_known) {
            obs.n = static_cast<int>(letters.size());
            arity_known = true;
        } else if (static_cast<int>(letters.size()) != obs.n) {
            fail(ErrorKind::InconsistentArity, "line " + std::to_string(lineno) + ": arity " +
                                                   std::to_string(letters.size()) + " != " +
                                                   std::to_string(obs.n));
        }
        obs.terms.emplace_back(coeff, PauliString{letters});
    }
    if (!arity_known) fail(ErrorKind::ParseError, "no terms found");
    return obs;
}

inline Observable load_hamiltonian(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorKind::IoError, "cannot open " + path);
    return parse_observable(f);
}

inline std::string observable_to_text(const Observable& obs) {
    std::ostringstream ss;
    ss.precision(17);
    if (obs.offset != 0.0) ss << "offset " << obs.offset << "\n";
    for (const auto& [coeff, p] : obs.terms) ss << coeff << " " << p.letters << "\n";
    return ss.str();
}

inline void save_hamiltonian(const Observable& obs, const std::string& path) {
    std::ofstream f(path);
    if (!f) fail(ErrorKind::IoError, "cannot open " + path + " for writing");
    f << observable_to_text(obs);
}

}  // namespace ansatzlab
