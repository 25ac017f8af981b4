#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <variant>
#include <vector>

#include "ansatzlab/errors.hpp"

namespace ansatzlab {

/// A CX-only layer: ordered (control, target) pairs.
struct CxLayer {
    std::vector<std::pair<int, int>> gates;
};

/// n x n bit matrix over GF(2); bit j of rows[i] is M[i][j]. A CX-only circuit
/// acts on basis labels as x -> Mx.
struct GF2Matrix {
    int n = 0;
    std::vector<uint64_t> rows;

    GF2Matrix() = default;
    explicit GF2Matrix(int n_) : n(n_), rows(n_, 0) {}

    static GF2Matrix identity(int n) {
        GF2Matrix m(n);
        for (int i = 0; i < n; ++i) m.rows[i] = uint64_t(1) << i;
        return m;
    }

    bool get(int r, int c) const { return (rows[r] >> c) & 1; }
    void set(int r, int c, bool v) {
        if (v) rows[r] |= uint64_t(1) << c;
        else rows[r] &= ~(uint64_t(1) << c);
    }

    uint64_t apply(uint64_t x) const {
        uint64_t y = 0;
        for (int i = 0; i < n; ++i) y |= uint64_t(std::popcount(rows[i] & x) & 1) << i;
        return y;
    }

    bool operator==(const GF2Matrix& o) const { return n == o.n && rows == o.rows; }
};

inline GF2Matrix gf2_mul(const GF2Matrix& a, const GF2Matrix& b) {
    if (a.n != b.n) fail(ErrorKind::DimensionMismatch, "gf2_mul");
    GF2Matrix z(a.n);
    for (int i = 0; i < a.n; ++i) {
        uint64_t row = 0;
        for (int k = 0; k < a.n; ++k)
            if (a.get(i, k)) row ^= b.rows[k];
        z.rows[i] = row;
    }
    return z;
}

/// Gaussian elimination; returns the inverse or nullopt when singular.
inline std::optional<GF2Matrix> gf2_inverse(const GF2Matrix& m) {
    const int n = m.n;
    std::vector<uint64_t> a = m.rows;
    GF2Matrix inv = GF2Matrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if ((a[r] >> col) & 1) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;
        std::swap(a[col], a[pivot]);
        std::swap(inv.rows[col], inv.rows[pivot]);
        for (int r = 0; r < n; ++r) {
            if (r != col && ((a[r] >> col) & 1)) {
                a[r] ^= a[col];
                inv.rows[r] ^= inv.rows[col];
            }
        }
    }
    return inv;
}

inline bool gf2_invertible(const GF2Matrix& m) { return gf2_inverse(m).has_value(); }

/// GF(2) action of a CX layer: CX(c -> t) xors bit c into bit t of the label.
inline GF2Matrix layer_to_gf2(const CxLayer& layer, int n) {
    GF2Matrix m = GF2Matrix::identity(n);
    for (auto [c, t] : layer.gates) {
        if (c < 0 || c >= n || t < 0 || t >= n || c == t)
            fail(ErrorKind::IndexOutOfRange, "CX layer indices");
        m.rows[t] ^= m.rows[c];
    }
    return m;
}

/// Smallest k >= 1 with M^k = I. The cap guards pathological inputs; element
/// orders of GL(n,2) at practical n are far below the default 2^20.
inline uint64_t gf2_order(const GF2Matrix& m, uint64_t cap = uint64_t(1) << 20) {
    if (cap < 1) fail(ErrorKind::InvalidSpec, "cap >= 1");
    if (!gf2_invertible(m)) fail(ErrorKind::NotInvertible, "gf2_order input");
    const GF2Matrix id = GF2Matrix::identity(m.n);
    GF2Matrix p = m;
    for (uint64_t k = 1; k <= cap; ++k) {
        if (p == id) return k;
        p = gf2_mul(p, m);
    }
    fail(ErrorKind::CapExceeded, "order exceeds cap " + std::to_string(cap));
}

/// Bijection on {0..2^n-1}.
struct BasisPermutation {
    int n = 0;
    std::vector<uint64_t> images;

    static BasisPermutation from_gf2(const GF2Matrix& m) {
        BasisPermutation p;
        p.n = m.n;
        p.images.resize(uint64_t(1) << m.n);
        for (uint64_t x = 0; x < p.images.size(); ++x) p.images[x] = m.apply(x);
        return p;
    }
};

struct NotLinear {
    uint64_t x = 0, y = 0;  // witness: perm(x^y) != perm(x)^perm(y)
};

/// Decides whether a basis permutation is a GF(2) linear map; returns the
/// matrix or an xor-violation witness. Exactly the permutations realizable by
/// CX-only circuits pass.
inline std::variant<GF2Matrix, NotLinear> is_linear(const BasisPermutation& perm) {
    const int n = perm.n;
    if (perm.images[0] != 0) return NotLinear{0, 0};
    GF2Matrix m(n);
    for (int k = 0; k < n; ++k) {
        const uint64_t img = perm.images[uint64_t(1) << k];
        for (int i = 0; i < n; ++i) m.set(i, k, (img >> i) & 1);
    }
    for (uint64_t x = 0; x < perm.images.size(); ++x) {
        if (m.apply(x) == perm.images[x]) continue;
        // walk down to an explicit xor violation
        uint64_t v = x;
        while (true) {
            const uint64_t a = v & (~v + 1);  // lowest set bit
            const uint64_t b = v ^ a;
            if (perm.images[v] != (perm.images[a] ^ perm.images[b])) return NotLinear{a, b};
            v = b;  // violation must persist in the remainder
        }
    }
    return m;
}

/// Transvection decomposition of an invertible M: a CX layer whose GF(2)
/// action equals M, at most n^2 gates. Row operations that reduce M to I are
/// replayed in reverse as CX(c -> t).
inline CxLayer gauss_decompose(const GF2Matrix& m) {
    const int n = m.n;
    std::vector<uint64_t> a = m.rows;
    std::vector<std::pair<int, int>> ops;  // row t ^= row c
    auto rowop = [&](int t, int c) {
        a[t] ^= a[c];
        ops.emplace_back(t, c);
    };
    for (int col = 0; col < n; ++col) {
        if (!((a[col] >> col) & 1)) {
            int r = -1;
            for (int i = col + 1; i < n; ++i)
                if ((a[i] >> col) & 1) {
                    r = i;
                    break;
                }
            if (r < 0) fail(ErrorKind::NotInvertible, "gauss_decompose input");
            rowop(col, r);
        }
        for (int i = 0; i < n; ++i)
            if (i != col && ((a[i] >> col) & 1)) rowop(i, col);
    }
    CxLayer layer;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) layer.gates.emplace_back(it->second, it->first);
    return layer;
}

/// CX sequence moving column i of a unitary to column j under U * E
/// (1-indexed columns, both >= 2: the all-zero label is immovable). The GF(2)
/// matrix M of the result maps label j-1 to label i-1, so (U E) e_{j-1} =
/// U e_{i-1}. Basis completion pivots greedily on the lowest set bit.
inline CxLayer synthesize_column_move(int n, int i, int j) {
    if (n < 1 || n > 60) fail(ErrorKind::InvalidSpec, "column move size");
    if (i < 2 || j < 2 || uint64_t(i) > (uint64_t(1) << n) || uint64_t(j) > (uint64_t(1) << n))
        fail(ErrorKind::InvalidColumn, "columns must lie in [2, 2^n]");
    if (i == j) return {};

    const uint64_t u = uint64_t(i) - 1, v = uint64_t(j) - 1;
    // Completes {first} to a basis with unit vectors, pivoting on the lowest
    // set bit for a deterministic result.
    auto complete_basis = [&](uint64_t first) {
        std::vector<uint64_t> pivot(n, 0);  // pivot[k]: stored vector with lowest set bit k
        auto insert = [&](uint64_t x) {
            while (x) {
                const int k = std::countr_zero(x);
                if (!pivot[k]) {
                    pivot[k] = x;
                    return true;
                }
                x ^= pivot[k];
            }
            return false;
        };
        std::vector<uint64_t> basis{first};
        insert(first);
        for (int k = 0; k < n && static_cast<int>(basis.size()) < n; ++k) {
            const uint64_t cand = uint64_t(1) << k;
            if (insert(cand)) basis.push_back(cand);
        }
        return basis;
    };

    const auto bu = complete_basis(u);
    const auto bv = complete_basis(v);
    GF2Matrix mu(n), mv(n);  // columns are the basis vectors
    for (int k = 0; k < n; ++k) {
        for (int r = 0; r < n; ++r) {
            mu.set(r, k, (bu[k] >> r) & 1);
            mv.set(r, k, (bv[k] >> r) & 1);
        }
    }
    const auto mv_inv = gf2_inverse(mv);
    if (!mv_inv) fail(ErrorKind::NotInvertible, "basis completion failed");
    const GF2Matrix m = gf2_mul(mu, *mv_inv);

    CxLayer layer = gauss_decompose(m);
    const GF2Matrix check = layer_to_gf2(layer, n);
    if (!(check == m) || check.apply(v) != u) fail(ErrorKind::NotInvertible, "column move verification");
    return layer;
}

}  // namespace ansatzlab
