#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "ansatzlab/errors.hpp"

namespace ansatzlab {

/// Dense real matrix, row-major.
struct RMatrix {
    int rows = 0, cols = 0;
    std::vector<double> a;

    RMatrix() = default;
    RMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    double& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const double& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

/// Singular values by one-sided Jacobi: rotates column pairs until all are
/// mutually orthogonal, then reads off column norms. Accurate for small
/// singular values, which is what rank detection needs.
inline std::vector<double> singular_values(const RMatrix& m) {
    if (m.rows == 0 || m.cols == 0) fail(ErrorKind::EmptyMatrix, "singular_values");
    const int rows = m.rows, cols = m.cols;

    // column-major copy so column ops are contiguous
    std::vector<double> c(static_cast<size_t>(rows) * cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) c[static_cast<size_t>(j) * rows + i] = m.at(i, j);

    const double tol = 1e-15;
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < cols - 1; ++p) {
            double* cp = &c[static_cast<size_t>(p) * rows];
            for (int q = p + 1; q < cols; ++q) {
                double* cq = &c[static_cast<size_t>(q) * rows];
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (int i = 0; i < rows; ++i) {
                    app += cp[i] * cp[i];
                    aqq += cq[i] * cq[i];
                    apq += cp[i] * cq[i];
                }
                if (std::abs(apq) <= tol * std::sqrt(app * aqq) || apq == 0.0) continue;
                rotated = true;
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                for (int i = 0; i < rows; ++i) {
                    const double vp = cp[i], vq = cq[i];
                    cp[i] = cs * vp - sn * vq;
                    cq[i] = sn * vp + cs * vq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sv(cols);
    for (int j = 0; j < cols; ++j) {
        double s = 0.0;
        const double* cj = &c[static_cast<size_t>(j) * rows];
        for (int i = 0; i < rows; ++i) s += cj[i] * cj[i];
        sv[j] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

/// Number of singular values above rel_tol * sigma_max.
inline int numerical_rank(const RMatrix& m, double rel_tol = 1e-8) {
    if (rel_tol <= 0.0 || rel_tol > 1e-2) fail(ErrorKind::InvalidSpec, "rel_tol out of (0, 1e-2]");
    const auto sv = singular_values(m);
    if (sv.empty() || sv[0] == 0.0) return 0;
    const double cut = rel_tol * sv[0];
    int r = 0;
    while (r < static_cast<int>(sv.size()) && sv[r] > cut) ++r;
    return r;
}

}  // namespace ansatzlab
