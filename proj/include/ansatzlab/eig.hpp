#pragma once

#include <algorithm>
#include <numeric>

#include "ansatzlab/linalg.hpp"
#include "ansatzlab/svd.hpp"

namespace ansatzlab {

struct SymEig {
    std::vector<double> values;  // ascending
    RMatrix vectors;             // columns
};

/// Cyclic Jacobi for dense real symmetric matrices. Runs sweeps until the
/// off-diagonal Frobenius norm drops below tol_factor * ||A||_F.
inline SymEig jacobi_symmetric(RMatrix a, double tol_factor = 1e-12) {
    const int n = a.rows;
    RMatrix v(n, n);
    for (int i = 0; i < n; ++i) v.at(i, i) = 1.0;

    double norm = 0.0;
    for (double x : a.a) norm += x * x;
    norm = std::sqrt(norm);
    const double target = tol_factor * std::max(norm, 1e-300);

    auto off_norm = [&]() {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += 2.0 * a.at(p, q) * a.at(p, q);
        return std::sqrt(s);
    };

    const int max_sweeps = 50;
    for (int sweep = 0; sweep < max_sweeps && off_norm() > target; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (std::abs(apq) <= target / n) continue;
                const double app = a.at(p, p), aqq = a.at(q, q);
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;

                for (int k = 0; k < n; ++k) {
                    const double akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
                a.at(p, p) = app - t * apq;
                a.at(q, q) = aqq + t * apq;

                for (int k = 0; k < n; ++k) {
                    const double vkp = v.at(k, p), vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s * vkq;
                    v.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return a.at(x, x) < a.at(y, y); });

    SymEig out;
    out.values.resize(n);
    out.vectors = RMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = a.at(order[j], order[j]);
        for (int i = 0; i < n; ++i) out.vectors.at(i, j) = v.at(i, order[j]);
    }
    return out;
}

struct HermEig {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // columns; unitary within tolerance
};

/// Exact eigensolver for complex Hermitian matrices: embeds H = A + iB into
/// the real symmetric [[A, -B], [B, A]] of twice the size, runs cyclic Jacobi,
/// and de-duplicates the doubled spectrum. The input is symmetrized first.
inline HermEig eigensolve(const CMatrix& h_in) {
    const int d = h_in.dim;
    if (d > 4096) fail(ErrorKind::DimensionTooLarge, "eigensolve supports dim <= 4096");
    if (d == 0) fail(ErrorKind::EmptyMatrix, "eigensolve");

    CMatrix h(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) h.at(i, j) = 0.5 * (h_in.at(i, j) + std::conj(h_in.at(j, i)));

    RMatrix m(2 * d, 2 * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double re = h.at(i, j).real(), im = h.at(i, j).imag();
            m.at(i, j) = re;
            m.at(i + d, j + d) = re;
            m.at(i, j + d) = -im;
            m.at(i + d, j) = im;
        }
    }

    const SymEig se = jacobi_symmetric(std::move(m));

    // Each complex eigenvector v shows up twice, as [Re v; Im v] and
    // [-Im v; Re v]. Walking the doubled spectrum in ascending order and
    // Gram-Schmidting in complex space keeps exactly one copy per pair and
    // handles degenerate clusters.
    HermEig out;
    out.vectors = CMatrix(d);
    int accepted = 0;
    std::vector<std::vector<cxd>> basis;
    for (int j = 0; j < 2 * d && accepted < d; ++j) {
        std::vector<cxd> v(d);
        for (int i = 0; i < d; ++i) v[i] = cxd(se.vectors.at(i, j), se.vectors.at(i + d, j));
        for (const auto& b : basis) {
            cxd ov(0, 0);
            for (int i = 0; i < d; ++i) ov += std::conj(b[i]) * v[i];
            for (int i = 0; i < d; ++i) v[i] -= ov * b[i];
        }
        double nv = 0.0;
        for (const cxd& x : v) nv += std::norm(x);
        nv = std::sqrt(nv);
        if (nv < 0.5) continue;  // duplicate of an accepted vector
        for (cxd& x : v) x /= nv;
        out.values.push_back(se.values[j]);
        for (int i = 0; i < d; ++i) out.vectors.at(i, accepted) = v[i];
        basis.push_back(std::move(v));
        ++accepted;
    }
    if (accepted != d) fail(ErrorKind::NotUnitary, "eigenvector de-duplication failed");
    return out;
}

}  // namespace ansatzlab
